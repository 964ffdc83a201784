#include "gt/model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gt/errors.hpp"

namespace gt {

DefectiveSet::DefectiveSet(std::initializer_list<std::size_t> members) : DefectiveSet(std::vector<std::size_t>(members)) {}

DefectiveSet::DefectiveSet(std::vector<std::size_t> members) : members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
        throw DomainError("defective set has a repeated item");
}

DefectiveSet DefectiveSet::from_labels(std::span<const std::size_t> labels)
{
    std::vector<std::size_t> members;
    members.reserve(labels.size());
    for (auto label : labels) {
        if (label == 0)
            throw DomainError("item labels start at 1");
        members.push_back(label - 1);
    }
    return DefectiveSet(std::move(members));
}

bool DefectiveSet::contains(std::size_t item) const noexcept
{
    return std::binary_search(members_.begin(), members_.end(), item);
}

void DefectiveSet::check_within(std::size_t n) const
{
    if (!members_.empty() && members_.back() >= n)
        throw DomainError("defective item " + std::to_string(members_.back() + 1) + " outside [1.." + std::to_string(n) +
                          "]");
}

std::vector<std::size_t> DefectiveSet::labels() const
{
    std::vector<std::size_t> out(members_);
    for (auto& x : out)
        ++x;
    return out;
}

Design::Design(std::size_t t, std::vector<BitVec> columns, std::optional<DesignMeta> meta)
    : t_(t), columns_(std::move(columns)), meta_(meta)
{
    if (t_ == 0)
        throw DomainError("design needs at least one pool");
    if (columns_.empty())
        throw DomainError("design needs at least one item");
    for (const auto& c : columns_)
        if (c.size() != t_)
            throw DomainError("column length differs from t");
}

Design Design::from_rows(const std::vector<std::string>& rows, std::optional<DesignMeta> meta)
{
    if (rows.empty())
        throw DomainError("design needs at least one pool");
    const std::size_t n = rows.front().size();
    std::vector<BitVec> columns(n, BitVec(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n)
            throw DomainError("ragged design rows");
        for (std::size_t j = 0; j < n; ++j)
            if (rows[i][j] == '1')
                columns[j].set(i);
    }
    return Design(rows.size(), std::move(columns), meta);
}

Design Design::from_column_strings(const std::vector<std::string>& columns, std::optional<DesignMeta> meta)
{
    if (columns.empty())
        throw DomainError("design needs at least one item");
    std::vector<BitVec> cols;
    cols.reserve(columns.size());
    for (const auto& c : columns)
        cols.push_back(BitVec::from_string(c));
    return Design(columns.front().size(), std::move(cols), meta);
}

Design Design::identity(std::size_t n)
{
    std::vector<BitVec> columns(n, BitVec(n));
    for (std::size_t j = 0; j < n; ++j)
        columns[j].set(j);
    return Design(n, std::move(columns));
}

std::vector<std::size_t> Design::pool(std::size_t i) const
{
    std::vector<std::size_t> items;
    for (std::size_t j = 0; j < columns_.size(); ++j)
        if (columns_[j].test(i))
            items.push_back(j);
    return items;
}

void Transcript::append(std::span<const std::size_t> pool, bool response)
{
    ++tests_;
    if (response)
        ++yeses_;
    if (record_steps_)
        steps_.push_back(TestStep{std::vector<std::size_t>(pool.begin(), pool.end()), response});
}

BitVec union_of(const Design& design, std::span<const std::size_t> items)
{
    BitVec u(design.t());
    for (auto j : items)
        u |= design.column(j);
    return u;
}

ResponseVector respond(const Design& design, const DefectiveSet& defectives)
{
    defectives.check_within(design.n());
    return ResponseVector{union_of(design, defectives.members())};
}

std::size_t yes_count(const Design& design, const DefectiveSet& defectives)
{
    return respond(design, defectives).weight();
}

namespace {

std::size_t parse_count(std::string_view token, const char* what)
{
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
        throw ParseError(std::string("bad ") + what + ": '" + std::string(token) + "'");
    return value;
}

std::size_t parse_meta_field(std::string_view token, std::string_view key)
{
    if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=')
        throw ParseError("metadata field must be " + std::string(key) + "=<value>");
    return parse_count(token.substr(key.size() + 1), "metadata value");
}

}  // namespace

Design parse_design(const std::string& text)
{
    if (text.empty() || text.back() != '\n')
        throw ParseError("design text must end with a newline");

    std::vector<std::string_view> lines;
    std::string_view rest(text);
    while (!rest.empty()) {
        auto nl = rest.find('\n');
        lines.push_back(rest.substr(0, nl));
        rest.remove_prefix(nl + 1);
    }

    const auto header = lines.front();
    const auto sp = header.find(' ');
    if (sp == std::string_view::npos || header.find(' ', sp + 1) != std::string_view::npos)
        throw ParseError("header must be 't n'");
    const std::size_t t = parse_count(header.substr(0, sp), "t");
    const std::size_t n = parse_count(header.substr(sp + 1), "n");
    if (t == 0 || n == 0)
        throw ParseError("t and n must be positive");

    std::size_t next = 1;
    std::optional<DesignMeta> meta;
    if (lines.size() > 1 && !lines[1].empty() && lines[1].front() == '#') {
        std::string_view m = lines[1];
        if (m.substr(0, 2) != "# ")
            throw ParseError("metadata line must start with '# '");
        m.remove_prefix(2);
        std::vector<std::string_view> fields;
        while (!m.empty()) {
            auto p = m.find(' ');
            fields.push_back(m.substr(0, p));
            if (p == std::string_view::npos)
                break;
            m.remove_prefix(p + 1);
        }
        if (fields.size() != 3)
            throw ParseError("metadata line must be '# d=<d> p=<p> s=<s>'");
        meta = DesignMeta{parse_meta_field(fields[0], "d"), parse_meta_field(fields[1], "p"),
                          parse_meta_field(fields[2], "s")};
        next = 2;
    }

    if (lines.size() - next != t)
        throw ParseError("expected " + std::to_string(t) + " pool rows, found " + std::to_string(lines.size() - next));

    std::vector<BitVec> columns(n, BitVec(t));
    for (std::size_t i = 0; i < t; ++i) {
        const auto row = lines[next + i];
        if (row.size() != n)
            throw ParseError("row " + std::to_string(i + 1) + " has length " + std::to_string(row.size()) +
                             ", expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] == '1')
                columns[j].set(i);
            else if (row[j] != '0')
                throw ParseError("row " + std::to_string(i + 1) + " has a character other than 0/1");
        }
    }
    return Design(t, std::move(columns), meta);
}

std::string format_design(const Design& design)
{
    std::string out = std::to_string(design.t()) + " " + std::to_string(design.n()) + "\n";
    if (design.meta()) {
        const auto& m = *design.meta();
        out += "# d=" + std::to_string(m.d) + " p=" + std::to_string(m.p) + " s=" + std::to_string(m.s) + "\n";
    }
    out.reserve(out.size() + design.t() * (design.n() + 1));
    for (std::size_t i = 0; i < design.t(); ++i) {
        for (std::size_t j = 0; j < design.n(); ++j)
            out.push_back(design.column(j).test(i) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

Design read_design_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open design file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_design(buf.str());
}

void write_design_file(const Design& design, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write design file " + path);
    out << format_design(design);
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

}  // namespace gt
