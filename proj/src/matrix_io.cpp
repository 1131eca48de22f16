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


#include "ncsd/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ncsd
{

namespace
{

std::string format_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view s, double &out)
{
    if (s.empty())
        return false;
    if (s.front() == '+')
        s.remove_prefix(1);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

struct Metadata
{
    std::optional<double> unitary_scale;
    std::vector<int> declared_ranks;
};

// Token reader over lines; tracks line numbers and collects metadata comments.
class Tokenizer
{
public:
    explicit Tokenizer(std::istream &is) : is_(is) {}

    bool next(std::string &tok)
    {
        while (!(line_stream_ >> tok))
        {
            std::string line;
            if (!std::getline(is_, line))
                return false;
            ++line_no_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first != std::string::npos && line[first] == '#')
            {
                parse_comment(line.substr(first + 1));
                line = {};
            }
            line_stream_.clear();
            line_stream_.str(line);
        }
        return true;
    }

    int line() const { return line_no_; }
    const Metadata &metadata() const { return meta_; }

private:
    void parse_comment(const std::string &body)
    {
        std::istringstream ss(body);
        std::string key;
        ss >> key;
        if (key == "unitary-scale")
        {
            std::string v;
            double d;
            if (ss >> v && parse_double(v, d))
                meta_.unitary_scale = d;
            else
                throw MatrixParseError("malformed unitary-scale metadata", line_no_);
        }
        else if (key == "declared-ranks")
        {
            int r;
            while (ss >> r)
                meta_.declared_ranks.push_back(r);
        }
    }

    std::istream &is_;
    std::istringstream line_stream_;
    int line_no_ = 0;
    Metadata meta_;
};

std::vector<CMatrix> read_all(Tokenizer &tk)
{
    std::vector<CMatrix> out;
    std::string tok;
    while (tk.next(tok))
    {
        if (tok != "complex-matrix")
            throw MatrixParseError("expected 'complex-matrix' header, got '" + tok + "'", tk.line());
        std::string rs, cs;
        int rows = -1, cols = -1;
        if (!tk.next(rs) || !tk.next(cs))
            throw MatrixParseError("truncated header", tk.line());
        if (std::from_chars(rs.data(), rs.data() + rs.size(), rows).ec != std::errc() ||
            std::from_chars(cs.data(), cs.data() + cs.size(), cols).ec != std::errc() || rows < 1 || cols < 1)
            throw MatrixParseError("invalid shape '" + rs + " " + cs + "'", tk.line());
        CMatrix A(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
            {
                if (!tk.next(tok))
                    throw MatrixParseError("expected " + std::to_string(rows * cols) + " entries, file ended",
                                           tk.line());
                const auto comma = tok.find(',');
                double re, im;
                if (comma == std::string::npos ||
                    !parse_double(std::string_view(tok).substr(0, comma), re) ||
                    !parse_double(std::string_view(tok).substr(comma + 1), im))
                    throw MatrixParseError("malformed entry '" + tok + "' (expected re,im)", tk.line());
                A(i, j) = cplx(re, im);
            }
        out.push_back(std::move(A));
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return f;
}

std::ofstream open_out(const std::filesystem::path &path)
{
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return f;
}

} // namespace

void write_matrix(std::ostream &os, const CMatrix &A)
{
    os << "complex-matrix " << A.rows() << ' ' << A.cols() << '\n';
    for (Eigen::Index i = 0; i < A.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < A.cols(); ++j)
        {
            if (j)
                os << ' ';
            os << format_double(A(i, j).real()) << ',' << format_double(A(i, j).imag());
        }
        os << '\n';
    }
}

std::vector<CMatrix> read_matrices(std::istream &is)
{
    Tokenizer tk(is);
    return read_all(tk);
}

CMatrix load_matrix(const std::filesystem::path &path)
{
    auto f = open_in(path);
    auto all = read_matrices(f);
    if (all.size() != 1)
        throw std::runtime_error("'" + path.string() + "': expected exactly one matrix, found " +
                                 std::to_string(all.size()));
    return std::move(all.front());
}

void save_matrix(const std::filesystem::path &path, const CMatrix &A)
{
    auto f = open_out(path);
    write_matrix(f, A);
}

void write_codebook(std::ostream &os, const Alphabet &alphabet)
{
    os << "# codebook M=" << alphabet.M() << " K=" << alphabet.K() << " Nt=" << alphabet.Nt() << '\n';
    if (alphabet.unitary_scale)
        os << "# unitary-scale " << format_double(*alphabet.unitary_scale) << '\n';
    if (!alphabet.declared_ranks.empty())
    {
        os << "# declared-ranks";
        for (int r : alphabet.declared_ranks)
            os << ' ' << r;
        os << '\n';
    }
    for (const Codeword &c : alphabet.codewords())
        write_matrix(os, c.matrix());
}

Alphabet read_codebook(std::istream &is)
{
    Tokenizer tk(is);
    auto mats = read_all(tk);
    if (mats.empty())
        throw MatrixParseError("codebook holds no matrices", tk.line());
    std::vector<Codeword> cws;
    for (auto &m : mats)
        cws.emplace_back(std::move(m));
    Alphabet a(std::move(cws));
    a.unitary_scale = tk.metadata().unitary_scale;
    a.declared_ranks = tk.metadata().declared_ranks;
    if (!a.declared_ranks.empty() && static_cast<int>(a.declared_ranks.size()) != a.M())
        throw MatrixParseError("declared-ranks has " + std::to_string(a.declared_ranks.size()) +
                                   " entries for " + std::to_string(a.M()) + " codewords",
                               tk.line());
    return a;
}

Alphabet load_codebook(const std::filesystem::path &path)
{
    auto f = open_in(path);
    return read_codebook(f);
}

void save_codebook(const std::filesystem::path &path, const Alphabet &alphabet)
{
    auto f = open_out(path);
    write_codebook(f, alphabet);
}

} // namespace ncsd
