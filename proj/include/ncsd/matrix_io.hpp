// SPDX-License-Identifier: Apache-2.0
//
// ncsd - numerical laboratory for noncoherent MIMO singular detection
// Copyright (C) 2026 The ncsd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef NCSD_MATRIX_IO_HPP
#define NCSD_MATRIX_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncsd/linalg.hpp"
#include "ncsd/model.hpp"

namespace ncsd
{

// Dense complex matrix text schema:
//
//   complex-matrix <rows> <cols>
//   re,im re,im ...        (rows x cols tokens, row-major, any whitespace)
//
// Lines starting with '#' are comments. A file may hold several matrices
// back to back. Codebook files are such a sequence (one block per codeword)
// with optional metadata comments:
//
//   # unitary-scale <value>
//   # declared-ranks <r0> <r1> ...

class MatrixParseError : public std::runtime_error
{
public:
    MatrixParseError(const std::string &what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

void write_matrix(std::ostream &os, const CMatrix &A);
std::vector<CMatrix> read_matrices(std::istream &is);

/// Reads exactly one matrix from a file.
CMatrix load_matrix(const std::filesystem::path &path);
void save_matrix(const std::filesystem::path &path, const CMatrix &A);

void write_codebook(std::ostream &os, const Alphabet &alphabet);
Alphabet read_codebook(std::istream &is);
Alphabet load_codebook(const std::filesystem::path &path);
void save_codebook(const std::filesystem::path &path, const Alphabet &alphabet);

} // namespace ncsd

#endif
