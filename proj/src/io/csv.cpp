#include "rankfuse/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rankfuse/errors.hpp"

namespace rankfuse {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

RawRankings read_rankings_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open rankings file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    const auto header = split_csv_line(strip_cr(line));
    const std::vector<std::string> expected{"ranker_id", "block_id", "position", "entity_id"};
    for (const auto& column : expected) {
        if (std::find(header.begin(), header.end(), column) == header.end())
            throw ParseError(path + ": missing column '" + column + "'");
    }
    std::vector<int> idx(4);
    for (int c = 0; c < 4; ++c)
        idx[c] = static_cast<int>(std::find(header.begin(), header.end(), expected[c]) -
                                  header.begin());

    RawRankings raw;
    std::set<std::string> seen_entities;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < header.size())
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields");
        RawRankings::Row row;
        row.ranker_id = fields[idx[0]];
        row.block_id = fields[idx[1]];
        const std::string& pos_text = fields[idx[2]];
        auto [ptr, ec] = std::from_chars(pos_text.data(), pos_text.data() + pos_text.size(),
                                         row.position);
        if (ec != std::errc() || ptr != pos_text.data() + pos_text.size())
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": column 'position' is not an integer: '" + pos_text + "'");
        row.entity_id = fields[idx[3]];
        if (row.entity_id.empty())
            throw ParseError(path + ":" + std::to_string(line_no) + ": empty entity_id");
        if (seen_entities.insert(row.entity_id).second)
            raw.entity_ids.push_back(row.entity_id);
        raw.rows.push_back(std::move(row));
    }
    if (raw.rows.empty()) throw ParseError(path + ": no data rows");
    return raw;
}

CovariatesFile read_covariates_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open covariates file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    const auto header = split_csv_line(strip_cr(line));
    if (header.empty() || header[0] != "entity_id")
        throw ParseError(path + ": first column must be 'entity_id'");
    const int p = static_cast<int>(header.size()) - 1;

    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != p + 1)
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(p + 1) + " fields");
        ids.push_back(fields[0]);
        std::vector<double> values(p);
        for (int c = 0; c < p; ++c) {
            const std::string& cell = fields[c + 1];
            try {
                std::size_t consumed = 0;
                values[c] = std::stod(cell, &consumed);
                if (consumed != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(line_no) + ": column '" +
                                 header[c + 1] + "' is not numeric: '" + cell + "'");
            }
        }
        rows.push_back(std::move(values));
    }
    if (ids.empty()) throw ParseError(path + ": no data rows");

    CovariatesFile file{EntitySet(ids), CovariateMatrix{}};
    file.covariates.values.resize(static_cast<int>(rows.size()), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int c = 0; c < p; ++c) file.covariates.values(static_cast<int>(i), c) = rows[i][c];
    file.covariates.column_names.assign(header.begin() + 1, header.end());
    file.covariates.validate();
    return file;
}

std::vector<RankingList> assemble_rankings(const RawRankings& raw, const EntitySet& entities) {
    // (ranker, block) -> position -> entity index, preserving appearance order
    std::vector<std::string> ranker_order;
    std::map<std::string, std::vector<std::string>> block_order;
    std::map<std::pair<std::string, std::string>, std::map<int, int>> cells;
    for (const auto& row : raw.rows) {
        const int e = entities.index_of(row.entity_id);
        if (e < 0)
            throw ValidationError("rankings reference unknown entity id '" + row.entity_id + "'");
        if (std::find(ranker_order.begin(), ranker_order.end(), row.ranker_id) ==
            ranker_order.end())
            ranker_order.push_back(row.ranker_id);
        auto& blocks = block_order[row.ranker_id];
        if (std::find(blocks.begin(), blocks.end(), row.block_id) == blocks.end())
            blocks.push_back(row.block_id);
        auto& cell = cells[{row.ranker_id, row.block_id}];
        if (row.position < 1)
            throw ValidationError("ranker '" + row.ranker_id + "' block '" + row.block_id +
                                  "': positions are 1-based");
        auto [it, inserted] = cell.emplace(row.position, e);
        if (!inserted)
            throw ValidationError("tie in ranker '" + row.ranker_id + "' block '" +
                                  row.block_id + "' at position " +
                                  std::to_string(row.position));
    }
    std::vector<RankingList> lists;
    for (const auto& ranker : ranker_order) {
        RankingList tau;
        tau.ranker_id = ranker;
        for (const auto& block_id : block_order[ranker]) {
            const auto& cell = cells[{ranker, block_id}];
            std::vector<int> block;
            int expected = 1;
            for (const auto& [pos, e] : cell) {
                if (pos != expected)
                    throw ValidationError("ranker '" + ranker + "' block '" + block_id +
                                          "': positions are not contiguous (missing " +
                                          std::to_string(expected) + ")");
                block.push_back(e);
                ++expected;
            }
            tau.blocks.push_back(std::move(block));
        }
        tau.validate(entities.n());
        lists.push_back(std::move(tau));
    }
    return lists;
}

void write_rankings_csv(const std::string& path, const std::vector<RankingList>& lists,
                        const EntitySet& entities) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << "ranker_id,block_id,position,entity_id\n";
    for (const auto& tau : lists) {
        for (std::size_t b = 0; b < tau.blocks.size(); ++b) {
            for (std::size_t t = 0; t < tau.blocks[b].size(); ++t)
                out << tau.ranker_id << ',' << b + 1 << ',' << t + 1 << ','
                    << entities.id(tau.blocks[b][t]) << '\n';
        }
    }
}

}  // namespace rankfuse
