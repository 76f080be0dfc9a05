// Copyright 2026 The ddo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ddo/channels.hpp"
#include "ddo/io.hpp"
#include "ddo/matrix.hpp"

namespace ddo {

// Process text format (.ddo), line oriented, '#' starts a comment:
//
//   dim 2
//   qudits 2
//   state singlet            # or: maximally_mixed | bloch x y z |
//                            #     pure ket.json | dm rho.json
//   step { measure 0, 1 }
//   channel depolarizing(0.5) on 0
//   step { measure 0 }
//
// A channel line sits between two step lines and may restrict itself to a
// qudit subset with `on`; the remaining qudits get identity factors.

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct StateSpec {
    enum class Kind { MaximallyMixed, PureFile, DmFile, Bloch, Singlet };
    Kind kind = Kind::MaximallyMixed;
    std::string path;
    double bx = 0.0, by = 0.0, bz = 0.0;

    std::string text() const {
        switch (kind) {
            case Kind::MaximallyMixed: return "maximally_mixed";
            case Kind::PureFile: return "pure " + path;
            case Kind::DmFile: return "dm " + path;
            case Kind::Singlet: return "singlet";
            case Kind::Bloch:
                return "bloch " + canonical_double(bx) + " " + canonical_double(by) + " " +
                       canonical_double(bz);
        }
        return {};
    }
    bool operator==(const StateSpec &o) const {
        return kind == o.kind && path == o.path && bx == o.bx && by == o.by && bz == o.bz;
    }
};

struct ChannelSpec {
    enum class Kind { Builtin, UnitaryFile, KrausFile };
    Kind kind = Kind::Builtin;
    std::string name;             // builtin
    std::vector<double> params;   // builtin
    std::string path;             // file kinds
    std::vector<int> targets;     // empty = full slice

    std::string text() const {
        std::string s;
        if (kind == Kind::Builtin) {
            s = name;
            if (!params.empty()) {
                s += "(";
                for (std::size_t i = 0; i < params.size(); ++i) {
                    if (i) s += ",";
                    s += canonical_double(params[i]);
                }
                s += ")";
            }
        } else if (kind == Kind::UnitaryFile) {
            s = "unitary(" + path + ")";
        } else {
            s = path;
        }
        if (!targets.empty()) {
            s += " on";
            for (int t : targets) s += " " + std::to_string(t);
        }
        return s;
    }
    bool operator==(const ChannelSpec &o) const {
        return kind == o.kind && name == o.name && params == o.params && path == o.path &&
               targets == o.targets;
    }
};

struct Step {
    std::vector<int> measured;                  // qudit indices, no duplicates
    std::optional<ChannelSpec> channel_spec;    // absent on last step
    std::optional<KrausChannel> next_channel;   // realized on the full d^n space
};

/// Event (step, slot) with its linear number in (step, slot) lexicographic
/// order.
struct EventIndex {
    int step = 0;
    int slot = 0;
    int global = 0;
};

struct ProcessModel {
    int local_dim = 0;
    int num_qudits = 0;
    StateSpec state_spec;
    DensityOperator initial;  // on d^num_qudits
    std::vector<Step> steps;

    int total_dim() const {
        int t = 1;
        for (int i = 0; i < num_qudits; ++i) t *= local_dim;
        return t;
    }
    int num_events() const {
        int n = 0;
        for (const Step &s : steps) n += static_cast<int>(s.measured.size());
        return n;
    }
    /// All qudits measured at every step; required for equal-time state
    /// recovery.
    bool information_complete() const {
        for (const Step &s : steps)
            if (static_cast<int>(s.measured.size()) != num_qudits) return false;
        return true;
    }
    FactorShape qudit_shape() const { return FactorShape(std::vector<int>(num_qudits, local_dim)); }
};

inline std::vector<EventIndex> event_layout(const ProcessModel &model) {
    std::vector<EventIndex> layout;
    int global = 0;
    for (int k = 0; k < static_cast<int>(model.steps.size()); ++k)
        for (int j = 0; j < static_cast<int>(model.steps[k].measured.size()); ++j)
            layout.push_back(EventIndex{k, j, global++});
    return layout;
}

namespace detail {

inline int checked_pow(int base, int exp, int limit) {
    long long t = 1;
    for (int i = 0; i < exp; ++i) {
        t *= base;
        if (t > limit) return -1;
    }
    return static_cast<int>(t);
}

inline CMatrix singlet_matrix() {
    // |ψ−⟩ = (|01⟩ − |10⟩)/√2
    CMatrix psi(4, 1);
    psi.at(1, 0) = 1.0 / std::sqrt(2.0);
    psi.at(2, 0) = -1.0 / std::sqrt(2.0);
    CMatrix rho(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho.at(i, j) = psi.at(i, 0) * std::conj(psi.at(j, 0));
    return rho;
}

}  // namespace detail

inline DensityOperator realize_state(const StateSpec &spec, int d, int n, const std::string &base_dir) {
    const int total = detail::checked_pow(d, n, 1 << 30);
    auto resolve = [&](const std::string &p) {
        if (p.empty()) return p;
        if (p.front() == '/') return p;
        return base_dir.empty() ? p : base_dir + "/" + p;
    };
    switch (spec.kind) {
        case StateSpec::Kind::MaximallyMixed:
            return DensityOperator::make(scaled(CMatrix::identity(total), 1.0 / total));
        case StateSpec::Kind::Singlet: {
            if (d != 2 || n != 2) throw std::domain_error("singlet state requires dim 2, qudits 2");
            return DensityOperator::make(detail::singlet_matrix());
        }
        case StateSpec::Kind::Bloch: {
            if (d != 2 || n != 1) throw std::domain_error("bloch state requires dim 2, qudits 1");
            CMatrix rho(2, 2);
            rho.at(0, 0) = 0.5 * (1.0 + spec.bz);
            rho.at(0, 1) = 0.5 * cx(spec.bx, -spec.by);
            rho.at(1, 0) = 0.5 * cx(spec.bx, spec.by);
            rho.at(1, 1) = 0.5 * (1.0 - spec.bz);
            return DensityOperator::make(std::move(rho));
        }
        case StateSpec::Kind::PureFile: {
            CMatrix ket = load_ket_file(resolve(spec.path));
            if (ket.rows != total) throw std::domain_error("ket dimension disagrees with dim^qudits");
            CMatrix rho(total, total);
            for (int i = 0; i < total; ++i)
                for (int j = 0; j < total; ++j) rho.at(i, j) = ket.at(i, 0) * std::conj(ket.at(j, 0));
            return DensityOperator::make(std::move(rho));
        }
        case StateSpec::Kind::DmFile: {
            CMatrix rho = load_matrix_file(resolve(spec.path));
            if (rho.rows != total || rho.cols != total)
                throw std::domain_error("density-matrix dimension disagrees with dim^qudits");
            return DensityOperator::make(std::move(rho));
        }
    }
    throw std::logic_error("realize_state: unreachable");
}

/// Realizes a channel spec on the full d^n space, embedding subset channels
/// with identity factors on the remaining qudits (permutation handled by
/// index arithmetic, not permutation matrices).
inline KrausChannel realize_channel(const ChannelSpec &spec, int d, int n, const std::string &base_dir) {
    auto resolve = [&](const std::string &p) {
        if (p.empty() || p.front() == '/') return p;
        return base_dir.empty() ? p : base_dir + "/" + p;
    };
    const FactorShape shape(std::vector<int>(n, d));
    std::vector<int> targets = spec.targets;
    if (targets.empty())
        for (int i = 0; i < n; ++i) targets.push_back(i);
    int sub_dim = 1;
    for (int t : targets) {
        if (t < 0 || t >= n) throw std::domain_error("channel target qudit out of range");
        sub_dim *= d;
    }

    KrausChannel local = [&] {
        switch (spec.kind) {
            case ChannelSpec::Kind::Builtin:
                if (spec.name == "swap") {
                    if (targets.size() != 2) throw std::domain_error("swap channel needs exactly two target qudits");
                    return builtin_channel("swap", spec.params, d);
                }
                return builtin_channel(spec.name, spec.params, sub_dim);
            case ChannelSpec::Kind::UnitaryFile: {
                CMatrix u = load_unitary_file(resolve(spec.path));
                if (u.rows != sub_dim) throw std::domain_error("unitary file dimension disagrees with targets");
                return KrausChannel::from_unitary(u);
            }
            case ChannelSpec::Kind::KrausFile: {
                KrausChannel ch = kraus_channel_from_json(read_json_file(resolve(spec.path)));
                if (ch.in_dim != sub_dim) throw std::domain_error("kraus file dimension disagrees with targets");
                return ch;
            }
        }
        throw std::logic_error("realize_channel: unreachable");
    }();

    bool full_slice_in_order = static_cast<int>(targets.size()) == n;
    for (std::size_t i = 0; i < targets.size() && full_slice_in_order; ++i)
        if (targets[i] != static_cast<int>(i)) full_slice_in_order = false;
    if (full_slice_in_order) return local;

    std::vector<CMatrix> embedded;
    embedded.reserve(local.kraus.size());
    for (const CMatrix &k : local.kraus) embedded.push_back(embed_on_factors(k, targets, shape));
    return KrausChannel::make(std::move(embedded));
}

namespace detail {

inline std::vector<std::string> tokenize_line(std::string line) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char &c : line)
        if (c == '\t' || c == '\r') c = ' ';
    // split braces and commas into their own tokens
    std::string spaced;
    for (char c : line) {
        if (c == '{' || c == '}' || c == ',') {
            spaced += ' ';
            spaced += c;
            spaced += ' ';
        } else {
            spaced += c;
        }
    }
    std::vector<std::string> tokens;
    std::istringstream stream(spaced);
    std::string tok;
    while (stream >> tok) tokens.push_back(tok);
    return tokens;
}

inline int parse_int(const std::string &tok, int line_no, const char *what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &used);
    } catch (...) {
        throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
    }
    if (used != tok.size())
        throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
    return value;
}

inline double parse_double(const std::string &tok, int line_no, const char *what) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(tok, &used);
    } catch (...) {
        throw ParseError(line_no, std::string("expected number ") + what + ", got '" + tok + "'");
    }
    if (used != tok.size())
        throw ParseError(line_no, std::string("expected number ") + what + ", got '" + tok + "'");
    if (!std::isfinite(value)) throw ParseError(line_no, std::string("non-finite number ") + what);
    return value;
}

inline ChannelSpec parse_channel_spec(const std::vector<std::string> &tokens, int line_no) {
    // tokens: <spec> [on i j ...], spec possibly split around commas inside ()
    // reassemble the spec text up to the optional 'on'
    std::size_t on_pos = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i)
        if (tokens[i] == "on") {
            on_pos = i;
            break;
        }
    std::string spec_text;
    for (std::size_t i = 0; i < on_pos; ++i) spec_text += tokens[i];
    if (spec_text.empty()) throw ParseError(line_no, "channel needs a specification");

    ChannelSpec spec;
    const std::size_t open = spec_text.find('(');
    if (open != std::string::npos) {
        if (spec_text.back() != ')') throw ParseError(line_no, "unbalanced parentheses in channel spec");
        const std::string head = spec_text.substr(0, open);
        const std::string inner = spec_text.substr(open + 1, spec_text.size() - open - 2);
        if (head == "unitary") {
            if (inner.empty()) throw ParseError(line_no, "unitary(...) needs a file path");
            spec.kind = ChannelSpec::Kind::UnitaryFile;
            spec.path = inner;
        } else {
            spec.kind = ChannelSpec::Kind::Builtin;
            spec.name = head;
            std::istringstream args(inner);
            std::string piece;
            while (std::getline(args, piece, ','))
                spec.params.push_back(parse_double(piece, line_no, "channel parameter"));
        }
    } else if (spec_text.size() > 5 && spec_text.substr(spec_text.size() - 5) == ".json") {
        spec.kind = ChannelSpec::Kind::KrausFile;
        spec.path = spec_text;
    } else {
        spec.kind = ChannelSpec::Kind::Builtin;
        spec.name = spec_text;
    }

    for (std::size_t i = on_pos + 1; i < tokens.size() && on_pos < tokens.size(); ++i)
        spec.targets.push_back(parse_int(tokens[i], line_no, "target qudit"));
    if (on_pos < tokens.size() && spec.targets.empty())
        throw ParseError(line_no, "'on' clause needs at least one qudit index");
    return spec;
}

}  // namespace detail

inline ProcessModel parse(const std::string &text, const std::string &base_dir = ".") {
    std::optional<int> dim, qudits;
    std::optional<StateSpec> state;
    std::vector<Step> steps;
    std::optional<std::pair<ChannelSpec, int>> pending_channel;  // spec + line

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::vector<std::string> tok = detail::tokenize_line(raw);
        if (tok.empty()) continue;
        const std::string &head = tok[0];

        if (head == "dim") {
            if (dim) throw ParseError(line_no, "duplicate 'dim' directive");
            if (tok.size() != 2) throw ParseError(line_no, "usage: dim <int>");
            const int d = detail::parse_int(tok[1], line_no, "dimension");
            if (d < 2) throw ParseError(line_no, "dim must be at least 2");
            dim = d;
        } else if (head == "qudits") {
            if (qudits) throw ParseError(line_no, "duplicate 'qudits' directive");
            if (tok.size() != 2) throw ParseError(line_no, "usage: qudits <int>");
            const int n = detail::parse_int(tok[1], line_no, "qudit count");
            if (n < 1) throw ParseError(line_no, "qudits must be at least 1");
            qudits = n;
        } else if (head == "state") {
            if (!dim || !qudits) throw ParseError(line_no, "'state' requires 'dim' and 'qudits' first");
            if (state) throw ParseError(line_no, "duplicate 'state' directive");
            if (tok.size() < 2) throw ParseError(line_no, "usage: state <spec>");
            StateSpec spec;
            if (tok[1] == "maximally_mixed" && tok.size() == 2) {
                spec.kind = StateSpec::Kind::MaximallyMixed;
            } else if (tok[1] == "singlet" && tok.size() == 2) {
                spec.kind = StateSpec::Kind::Singlet;
            } else if (tok[1] == "pure" && tok.size() == 3) {
                spec.kind = StateSpec::Kind::PureFile;
                spec.path = tok[2];
            } else if (tok[1] == "dm" && tok.size() == 3) {
                spec.kind = StateSpec::Kind::DmFile;
                spec.path = tok[2];
            } else if (tok[1] == "bloch" && tok.size() == 5) {
                spec.kind = StateSpec::Kind::Bloch;
                spec.bx = detail::parse_double(tok[2], line_no, "bloch x");
                spec.by = detail::parse_double(tok[3], line_no, "bloch y");
                spec.bz = detail::parse_double(tok[4], line_no, "bloch z");
            } else {
                throw ParseError(line_no, "unknown state specification");
            }
            state = spec;
        } else if (head == "step") {
            if (!dim || !qudits || !state)
                throw ParseError(line_no, "'step' requires 'dim', 'qudits' and 'state' first");
            if (!steps.empty() && !pending_channel)
                throw ParseError(line_no, "expected 'channel' between steps");
            if (tok.size() < 3 || tok[1] != "{" || tok.back() != "}")
                throw ParseError(line_no, "usage: step { measure i, j, ... } or step { }");
            Step step;
            if (tok.size() > 3) {
                if (tok[2] != "measure") throw ParseError(line_no, "expected 'measure' inside step");
                bool expect_index = true;
                for (std::size_t i = 3; i + 1 < tok.size(); ++i) {
                    if (tok[i] == ",") {
                        if (expect_index) throw ParseError(line_no, "stray comma in measure list");
                        expect_index = true;
                        continue;
                    }
                    if (!expect_index) throw ParseError(line_no, "missing comma in measure list");
                    const int q = detail::parse_int(tok[i], line_no, "qudit index");
                    if (q < 0 || q >= *qudits) throw ParseError(line_no, "qudit index out of range");
                    for (int seen : step.measured)
                        if (seen == q) throw ParseError(line_no, "duplicate qudit in measure list");
                    step.measured.push_back(q);
                    expect_index = false;
                }
                if (expect_index) throw ParseError(line_no, "measure list ends with a comma");
                if (step.measured.empty()) throw ParseError(line_no, "measure list is empty");
            }
            if (pending_channel) {
                steps.back().channel_spec = pending_channel->first;
                pending_channel.reset();
            }
            steps.push_back(std::move(step));
        } else if (head == "channel") {
            if (steps.empty()) throw ParseError(line_no, "'channel' before the first step");
            if (pending_channel) throw ParseError(line_no, "two consecutive 'channel' lines");
            ChannelSpec spec = detail::parse_channel_spec({tok.begin() + 1, tok.end()}, line_no);
            for (std::size_t i = 0; i < spec.targets.size(); ++i) {
                if (spec.targets[i] < 0 || spec.targets[i] >= *qudits)
                    throw ParseError(line_no, "channel target qudit out of range");
                for (std::size_t j = 0; j < i; ++j)
                    if (spec.targets[j] == spec.targets[i])
                        throw ParseError(line_no, "duplicate channel target qudit");
            }
            // canonical form: a full in-order slice carries no 'on' clause
            bool full_in_order = static_cast<int>(spec.targets.size()) == *qudits;
            for (std::size_t i = 0; i < spec.targets.size() && full_in_order; ++i)
                if (spec.targets[i] != static_cast<int>(i)) full_in_order = false;
            if (full_in_order) spec.targets.clear();
            pending_channel = {spec, line_no};
        } else {
            throw ParseError(line_no, "unknown directive '" + head + "'");
        }
    }

    line_no = std::max(line_no, 1);  // empty input still reports a line
    if (!dim) throw ParseError(line_no, "missing 'dim' directive");
    if (!qudits) throw ParseError(line_no, "missing 'qudits' directive");
    if (!state) throw ParseError(line_no, "missing 'state' directive");
    if (steps.empty()) throw ParseError(line_no, "process needs at least one step");
    if (pending_channel) throw ParseError(pending_channel->second, "channel after the last step");
    if (detail::checked_pow(*dim, *qudits, 4096) < 0)
        throw ParseError(line_no, "dim^qudits exceeds the supported desk scale (4096)");

    ProcessModel model;
    model.local_dim = *dim;
    model.num_qudits = *qudits;
    model.state_spec = *state;
    try {
        model.initial = realize_state(*state, *dim, *qudits, base_dir);
    } catch (const std::exception &e) {
        throw ParseError(line_no, std::string("state: ") + e.what());
    }
    model.steps = std::move(steps);
    if (model.num_events() < 1) throw ParseError(line_no, "process measures no events");
    for (std::size_t k = 0; k + 1 < model.steps.size(); ++k) {
        try {
            model.steps[k].next_channel =
                realize_channel(*model.steps[k].channel_spec, *dim, *qudits, base_dir);
        } catch (const std::exception &e) {
            throw ParseError(line_no, std::string("channel: ") + e.what());
        }
    }
    return model;
}

inline std::string serialize(const ProcessModel &model) {
    std::ostringstream out;
    out << "dim " << model.local_dim << "\n";
    out << "qudits " << model.num_qudits << "\n";
    out << "state " << model.state_spec.text() << "\n";
    for (std::size_t k = 0; k < model.steps.size(); ++k) {
        const Step &step = model.steps[k];
        if (step.measured.empty()) {
            out << "step { }\n";
        } else {
            out << "step { measure ";
            for (std::size_t i = 0; i < step.measured.size(); ++i) {
                if (i) out << ", ";
                out << step.measured[i];
            }
            out << " }\n";
        }
        if (k + 1 < model.steps.size()) {
            if (!step.channel_spec)
                throw std::invalid_argument("serialize: intermediate step lacks a channel spec");
            out << "channel " << step.channel_spec->text() << "\n";
        }
    }
    return out.str();
}

inline bool structural_equal(const ProcessModel &a, const ProcessModel &b) {
    if (a.local_dim != b.local_dim || a.num_qudits != b.num_qudits) return false;
    if (!(a.state_spec == b.state_spec)) return false;
    if (a.initial.mat.entries != b.initial.mat.entries) return false;
    if (a.steps.size() != b.steps.size()) return false;
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        if (a.steps[k].measured != b.steps[k].measured) return false;
        const auto &ca = a.steps[k].channel_spec;
        const auto &cb = b.steps[k].channel_spec;
        if (ca.has_value() != cb.has_value()) return false;
        if (ca && !(*ca == *cb)) return false;
        const auto &ka = a.steps[k].next_channel;
        const auto &kb = b.steps[k].next_channel;
        if (ka.has_value() != kb.has_value()) return false;
        if (ka) {
            if (ka->kraus.size() != kb->kraus.size()) return false;
            for (std::size_t i = 0; i < ka->kraus.size(); ++i)
                if (ka->kraus[i].entries != kb->kraus[i].entries) return false;
        }
    }
    return true;
}

}  // namespace ddo
