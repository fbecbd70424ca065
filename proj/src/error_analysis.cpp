#include "medlat/error_analysis.h"

#include "medlat/error.h"
#include "medlat/text.h"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <tuple>

namespace medlat::analysis {

std::vector<AlignOp> align_chars(std::string_view gold_utf8, std::string_view pred_utf8) {
    const std::u32string g = text::decode(gold_utf8);
    const std::u32string p = text::decode(pred_utf8);
    const std::size_t n = g.size();
    const std::size_t m = p.size();
    // cost[i][j]: distance between the suffixes g[i..] and p[j..]
    std::vector<std::size_t> cost((n + 1) * (m + 1));
    auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * (m + 1) + j]; };
    for (std::size_t i = n + 1; i-- > 0;) {
        for (std::size_t j = m + 1; j-- > 0;) {
            if (i == n) {
                at(i, j) = m - j;
            } else if (j == m) {
                at(i, j) = n - i;
            } else {
                const std::size_t diag = at(i + 1, j + 1) + (g[i] == p[j] ? 0 : 1);
                at(i, j) = std::min({diag, at(i + 1, j) + 1, at(i, j + 1) + 1});
            }
        }
    }
    std::vector<AlignOp> ops;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < n || j < m) {
        const std::size_t here = at(i, j);
        if (i < n && j < m && g[i] == p[j] && here == at(i + 1, j + 1)) {
            ops.push_back({AlignOp::Kind::match, g[i], p[j]});
            ++i;
            ++j;
        } else if (i < n && j < m && g[i] != p[j] && here == at(i + 1, j + 1) + 1) {
            ops.push_back({AlignOp::Kind::sub, g[i], p[j]});
            ++i;
            ++j;
        } else if (i < n && here == at(i + 1, j) + 1) {
            ops.push_back({AlignOp::Kind::del, g[i], 0});
            ++i;
        } else {
            ops.push_back({AlignOp::Kind::ins, 0, p[j]});
            ++j;
        }
    }
    return ops;
}

std::size_t alignment_cost(const std::vector<AlignOp>& ops) {
    return static_cast<std::size_t>(
        std::count_if(ops.begin(), ops.end(), [](const AlignOp& op) { return op.kind != AlignOp::Kind::match; }));
}

std::string format_alignment(const std::vector<AlignOp>& ops) {
    std::string out;
    for (const auto& op : ops) {
        if (!out.empty()) out += ' ';
        switch (op.kind) {
        case AlignOp::Kind::match:
            out += '=';
            text::append_utf8(out, op.gold);
            break;
        case AlignOp::Kind::sub:
            out += '~';
            text::append_utf8(out, op.gold);
            out += '/';
            text::append_utf8(out, op.pred);
            break;
        case AlignOp::Kind::del:
            out += '-';
            text::append_utf8(out, op.gold);
            break;
        case AlignOp::Kind::ins:
            out += '+';
            text::append_utf8(out, op.pred);
            break;
        }
    }
    return out;
}

std::vector<ConfusionPattern> extract_patterns(std::string_view gold, std::string_view pred) {
    if (gold == pred) throw Error("IdenticalStrings", "'" + std::string(gold) + "'");
    const auto ops = align_chars(gold, pred);
    const std::size_t gold_len = text::length(gold);

    std::vector<ConfusionPattern> out;
    std::size_t gi = 0;
    std::size_t k = 0;
    while (k < ops.size()) {
        if (ops[k].kind == AlignOp::Kind::match) {
            ++gi;
            ++k;
            continue;
        }
        const std::size_t run_start = gi;
        ConfusionPattern pat;
        for (; k < ops.size() && ops[k].kind != AlignOp::Kind::match; ++k) {
            if (ops[k].kind != AlignOp::Kind::ins) {
                text::append_utf8(pat.gold_sub, ops[k].gold);
                ++gi;
            }
            if (ops[k].kind != AlignOp::Kind::del) text::append_utf8(pat.pred_sub, ops[k].pred);
        }
        if (run_start == 0) {
            pat.position = Position::initial;
        } else if (gi == gold_len) {
            pat.position = Position::final;
        } else {
            pat.position = Position::middle;
        }
        pat.count = 1;
        out.push_back(std::move(pat));
    }
    return out;
}

std::vector<ConfusionPattern> mine_confusions(const std::vector<std::pair<std::string, std::string>>& errors) {
    std::map<std::tuple<Position, std::string, std::string>, long> counts;
    for (const auto& [gold, pred] : errors) {
        if (gold == pred) continue;
        for (const auto& p : extract_patterns(gold, pred)) counts[{p.position, p.gold_sub, p.pred_sub}] += 1;
    }
    std::vector<ConfusionPattern> out;
    for (const auto& [key, n] : counts) {
        const auto& [pos, g, p] = key;
        out.push_back({g, p, pos, n});
    }
    std::stable_sort(out.begin(), out.end(), [](const ConfusionPattern& a, const ConfusionPattern& b) {
        if (a.position != b.position) return a.position < b.position;
        if (a.count != b.count) return a.count > b.count;
        return a.pattern() < b.pattern();
    });
    return out;
}

std::vector<ConfusionPattern> top_k_per_position(const std::vector<ConfusionPattern>& patterns, std::size_t k) {
    std::vector<ConfusionPattern> out;
    std::map<Position, std::size_t> seen;
    for (const auto& p : patterns) {
        if (seen[p.position]++ < k) out.push_back(p);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> collect_lemma_errors(const conllu::Document& gold,
                                                                       const conllu::Document& predicted,
                                                                       bool include_sym) {
    evaluation::check_aligned(gold, predicted);
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t si = 0; si < gold.sentences.size(); ++si) {
        const auto& g = gold.sentences[si].tokens;
        const auto& p = predicted.sentences[si].tokens;
        for (std::size_t ti = 0; ti < g.size(); ++ti) {
            if (!include_sym && g[ti].upos == "SYM") continue;
            std::string gl = text::lowercase(g[ti].lemma);
            std::string pl = text::lowercase(p[ti].lemma);
            if (gl != pl) out.emplace_back(std::move(gl), std::move(pl));
        }
    }
    return out;
}

long PosConfusionMatrix::total() const {
    long n = 0;
    for (const auto& [k, c] : counts) n += c;
    return n;
}

long PosConfusionMatrix::errors_for_gold(const std::string& gold_upos) const {
    long n = 0;
    for (const auto& [k, c] : counts) {
        if (k.first == gold_upos) n += c;
    }
    return n;
}

std::optional<double> PosConfusionMatrix::share(const std::string& gold_upos, const std::string& pred_upos) const {
    const long all = errors_for_gold(gold_upos);
    if (all == 0) return std::nullopt;
    const auto it = counts.find({gold_upos, pred_upos});
    return static_cast<double>(it == counts.end() ? 0 : it->second) / static_cast<double>(all);
}

PosConfusionMatrix pos_confusions(const conllu::Document& gold, const conllu::Document& predicted) {
    evaluation::check_aligned(gold, predicted);
    PosConfusionMatrix m;
    for (std::size_t si = 0; si < gold.sentences.size(); ++si) {
        const auto& g = gold.sentences[si].tokens;
        const auto& p = predicted.sentences[si].tokens;
        for (std::size_t ti = 0; ti < g.size(); ++ti) {
            if (g[ti].upos != p[ti].upos) m.counts[{g[ti].upos, p[ti].upos}] += 1;
        }
    }
    return m;
}

GenreErrorDistribution genre_distribution(const std::map<std::string, evaluation::EvalReport>& reports,
                                          evaluation::Field field) {
    if (reports.empty()) throw Error("InvalidArgument", "no reports given");
    GenreErrorDistribution d;
    for (const auto& [genre, r] : reports) {
        const long e = r.errors(field);
        d.genres[genre].errors = e;
        d.total += e;
    }
    if (d.total > 0) {
        for (auto& [genre, s] : d.genres) s.share = static_cast<double>(s.errors) / static_cast<double>(d.total);
    }
    return d;
}

namespace {

std::string fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

std::string format_confusion_table(const std::vector<ConfusionPattern>& patterns, std::size_t top_k) {
    const Position cols[] = {Position::initial, Position::middle, Position::final};
    std::vector<std::vector<const ConfusionPattern*>> by_col(3);
    for (const auto& p : patterns) {
        for (int c = 0; c < 3; ++c) {
            if (p.position == cols[c] && by_col[c].size() < top_k) by_col[c].push_back(&p);
        }
    }
    std::size_t rows = 0;
    for (const auto& c : by_col) rows = std::max(rows, c.size());
    std::ostringstream out;
    for (int c = 0; c < 3; ++c) out << std::left << std::setw(12) << to_string(cols[c]) << std::setw(8) << "";
    out << '\n';
    for (int c = 0; c < 3; ++c) out << std::left << std::setw(12) << "pattern" << std::right << std::setw(6) << "count" << "  ";
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (int c = 0; c < 3; ++c) {
            if (r < by_col[c].size()) {
                out << std::left << std::setw(12) << by_col[c][r]->pattern() << std::right << std::setw(6)
                    << by_col[c][r]->count << "  ";
            } else {
                out << std::setw(20) << "";
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string format_confusion_rows(const std::vector<ConfusionPattern>& patterns, std::size_t top_k) {
    std::string out;
    for (const auto& p : top_k_per_position(patterns, top_k)) {
        out += to_string(p.position) + "\t" + p.pattern() + "\t" + std::to_string(p.count) + "\n";
    }
    return out;
}

std::string format_pos_table(const PosConfusionMatrix& m, std::size_t top_k) {
    std::vector<std::pair<std::pair<std::string, std::string>, long>> rows(m.counts.begin(), m.counts.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (rows.size() > top_k) rows.resize(top_k);
    std::ostringstream out;
    out << std::left << std::setw(8) << "gold" << std::setw(8) << "pred" << std::right << std::setw(8) << "count"
        << std::setw(10) << "of gold" << '\n';
    for (const auto& [k, c] : rows) {
        out << std::left << std::setw(8) << k.first << std::setw(8) << k.second << std::right << std::setw(8) << c
            << std::setw(9) << fixed(100.0 * m.share(k.first, k.second).value_or(0.0), 1) << "%\n";
    }
    out << "total errors: " << m.total() << '\n';
    return out.str();
}

std::string format_pos_rows(const PosConfusionMatrix& m) {
    std::string out;
    for (const auto& [k, c] : m.counts) {
        out += k.first + "\t" + k.second + "\t" + std::to_string(c) + "\t" +
               fixed(m.share(k.first, k.second).value_or(0.0), 4) + "\n";
    }
    return out;
}

std::string format_genre_table(const GenreErrorDistribution& d) {
    std::ostringstream out;
    out << std::left << std::setw(14) << "genre" << std::right << std::setw(8) << "errors" << std::setw(9) << "share"
        << '\n';
    for (const auto& [genre, s] : d.genres) {
        out << std::left << std::setw(14) << genre << std::right << std::setw(8) << s.errors << std::setw(9)
            << (s.share ? fixed(100.0 * *s.share, 1) + "%" : std::string("n/a")) << '\n';
    }
    out << "total errors: " << d.total << '\n';
    return out.str();
}

std::string format_genre_rows(const GenreErrorDistribution& d) {
    std::string out;
    for (const auto& [genre, s] : d.genres) {
        out += genre + "\t" + std::to_string(s.errors) + "\t" + (s.share ? fixed(*s.share, 4) : std::string("NA")) + "\n";
    }
    return out;
}

} // namespace medlat::analysis
