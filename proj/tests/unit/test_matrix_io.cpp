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


#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ncsd/matrix_io.hpp"
#include "test_support.hpp"

using namespace ncsd;

TEST_CASE("matrices round-trip bit-exactly", "[matrix_io]")
{
    test::Gen g(41);
    const CMatrix A = g.gaussian(3, 5);
    CMatrix B = g.gaussian(2, 2) * 1e-300;
    B(0, 0) = cplx(-0.0, 1e300);
    std::stringstream ss;
    write_matrix(ss, A);
    write_matrix(ss, B);
    const auto got = read_matrices(ss);
    REQUIRE(got.size() == 2);
    REQUIRE(got[0] == A);
    REQUIRE(got[1] == B);
}

TEST_CASE("comments and free whitespace are accepted", "[matrix_io]")
{
    std::istringstream in("# leading comment\n"
                          "complex-matrix 2 2\n"
                          "1,0   0,1\n"
                          "   # inner comment\n"
                          "0,-1\n"
                          "2.5e0,0\n");
    const auto m = read_matrices(in);
    REQUIRE(m.size() == 1);
    REQUIRE(m[0](0, 1) == cplx(0, 1));
    REQUIRE(m[0](1, 0) == cplx(0, -1));
    REQUIRE(m[0](1, 1) == cplx(2.5, 0));
}

TEST_CASE("parse errors carry the line number", "[matrix_io]")
{
    auto line_of = [](const std::string &text) {
        std::istringstream in(text);
        try
        {
            read_matrices(in);
        }
        catch (const MatrixParseError &e)
        {
            return e.line();
        }
        return -1;
    };
    REQUIRE(line_of("complex-matrix 1 2\n1,0\n\n") == 3);
    REQUIRE(line_of("# c\nreal-matrix 1 1\n1,0\n") == 2);
    REQUIRE(line_of("complex-matrix 1 1\n1;0\n") == 2);
    REQUIRE(line_of("complex-matrix 0 1\n") == 1);
    REQUIRE(line_of("complex-matrix 1 1\n1,0,2\n") == 2);
}

TEST_CASE("codebook files keep metadata", "[matrix_io]")
{
    test::Gen g(42);
    Alphabet a = Alphabet::normalized({Codeword(g.truncated_unitary(3, 2)), Codeword(g.truncated_unitary(3, 2))});
    a.unitary_scale = std::sqrt(1.5);
    a.declared_ranks = {2, 2};
    const auto path = std::filesystem::temp_directory_path() / "ncsd_test_codebook.txt";
    save_codebook(path, a);
    const Alphabet b = load_codebook(path);
    std::filesystem::remove(path);
    REQUIRE(b.M() == 2);
    REQUIRE(b[0].matrix() == a[0].matrix());
    REQUIRE(b[1].matrix() == a[1].matrix());
    REQUIRE(b.unitary_scale.has_value());
    REQUIRE(*b.unitary_scale == *a.unitary_scale);
    REQUIRE(b.declared_ranks == a.declared_ranks);
    REQUIRE(b.is_normalized());
}

TEST_CASE("declared-ranks must match the codeword count", "[matrix_io]")
{
    std::istringstream in("# declared-ranks 1 1 1\ncomplex-matrix 1 1\n1,0\n");
    REQUIRE_THROWS_AS(read_codebook(in), MatrixParseError);
}

TEST_CASE("load_matrix wants exactly one matrix", "[matrix_io]")
{
    const auto path = std::filesystem::temp_directory_path() / "ncsd_test_two.txt";
    {
        std::ofstream f(path);
        write_matrix(f, CMatrix::Identity(2, 2));
        write_matrix(f, CMatrix::Identity(2, 2));
    }
    REQUIRE_THROWS_AS(load_matrix(path), std::runtime_error);
    std::filesystem::remove(path);
    REQUIRE_THROWS_AS(load_matrix(path), std::runtime_error);
}
