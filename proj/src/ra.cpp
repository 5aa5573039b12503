#include "emdm/ra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace emdm::ra {

using datalog::Atom;
using datalog::Literal;
using datalog::Term;

std::unique_ptr<Expr> Expr::clone() const {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->relation = relation;
    e->role = role;
    e->conds = conds;
    e->items = items;
    e->renames = renames;
    e->columns = columns;
    for (const auto &k : kids) e->kids.push_back(k->clone());
    return e;
}

namespace {

std::string cond_text(const Cond &c) {
    std::string rhs = c.rhs_is_col ? c.rhs_col : c.rhs_const.to_string();
    return c.lhs + " " + datalog::cmp_op_text(c.op) + " " + rhs;
}

} // namespace

std::string Expr::to_string() const {
    switch (kind) {
    case Kind::Leaf: {
        switch (role) {
        case LeafRole::Full: return relation;
        case LeafRole::Delta: return "Δ" + relation;
        case LeafRole::Prev: return relation + "'";
        }
        return relation;
    }
    case Kind::Rename: {
        std::string out = "ρ[";
        for (size_t i = 0; i < renames.size(); ++i) {
            if (i) out += ", ";
            out += renames[i];
        }
        return out + "](" + kids[0]->to_string() + ")";
    }
    case Kind::Select: {
        std::string out = "σ[";
        for (size_t i = 0; i < conds.size(); ++i) {
            if (i) out += " ∧ ";
            out += cond_text(conds[i]);
        }
        return out + "](" + kids[0]->to_string() + ")";
    }
    case Kind::Project: {
        std::string out = "π[";
        for (size_t i = 0; i < items.size(); ++i) {
            if (i) out += ", ";
            out += items[i].is_col ? items[i].col : items[i].constant.to_string();
        }
        return out + "](" + kids[0]->to_string() + ")";
    }
    case Kind::Join: return "(" + kids[0]->to_string() + " ⋈ " + kids[1]->to_string() + ")";
    case Kind::Union: return "(" + kids[0]->to_string() + " ∪ " + kids[1]->to_string() + ")";
    case Kind::Diff: return "(" + kids[0]->to_string() + " ∖ " + kids[1]->to_string() + ")";
    }
    return "?";
}

std::string Equation::to_string() const {
    std::string out = predicate + " = ";
    for (size_t i = 0; i < alternatives.size(); ++i) {
        if (i) out += " ∪ ";
        out += alternatives[i]->to_string();
    }
    return out;
}

const Equation *EquationSystem::find(const std::string &pred) const {
    for (const auto &e : equations)
        if (e.predicate == pred) return &e;
    return nullptr;
}

std::string EquationSystem::to_string() const {
    std::ostringstream out;
    int n = 0;
    for (const auto &stratum : info.strata) {
        ++n;
        out << "stratum " << n << ":";
        for (const auto &p : stratum) out << " " << p;
        out << "\n";
        for (const auto &p : stratum)
            if (const Equation *e = find(p)) out << "  " << e->to_string() << "\n";
    }
    return out.str();
}

namespace {

std::unique_ptr<Expr> make_leaf(const std::string &rel, int arity) {
    auto leaf = std::make_unique<Expr>();
    leaf->kind = Expr::Kind::Leaf;
    leaf->relation = rel;
    for (int i = 0; i < arity; ++i) leaf->columns.push_back("c" + std::to_string(i + 1));
    return leaf;
}

/// π[vars](σ[equalities, constants](ρ[positional names](leaf)))
std::unique_ptr<Expr> atom_expr(const Atom &a, int arity) {
    auto node = make_leaf(a.predicate, arity);

    auto rename = std::make_unique<Expr>();
    rename->kind = Expr::Kind::Rename;
    std::vector<Cond> conds;
    std::set<std::string> seen;
    int fresh = 0;
    for (size_t i = 0; i < a.args.size(); ++i) {
        const Term &t = a.args[i];
        if (t.kind == Term::Kind::Var) {
            if (seen.insert(t.var).second) {
                rename->renames.push_back(t.var);
            } else {
                std::string alias = "$" + t.var + std::to_string(++fresh);
                rename->renames.push_back(alias);
                conds.push_back({t.var, true, alias, {}, datalog::CmpOp::Eq});
            }
        } else {
            std::string alias = "$" + std::to_string(i + 1);
            rename->renames.push_back(alias);
            conds.push_back({alias, false, "", t, datalog::CmpOp::Eq});
        }
    }
    rename->columns = rename->renames;
    rename->kids.push_back(std::move(node));

    std::unique_ptr<Expr> cur = std::move(rename);
    if (!conds.empty()) {
        auto sel = std::make_unique<Expr>();
        sel->kind = Expr::Kind::Select;
        sel->conds = std::move(conds);
        sel->columns = cur->columns;
        sel->kids.push_back(std::move(cur));
        cur = std::move(sel);
    }

    auto proj = std::make_unique<Expr>();
    proj->kind = Expr::Kind::Project;
    for (const auto &name : cur->columns)
        if (name[0] != '$') { // drop constant slots and duplicate-variable aliases
            proj->items.push_back({true, name, {}});
            proj->columns.push_back(name);
        }
    proj->kids.push_back(std::move(cur));
    return proj;
}

std::unique_ptr<Expr> join(std::unique_ptr<Expr> l, std::unique_ptr<Expr> r) {
    auto j = std::make_unique<Expr>();
    j->kind = Expr::Kind::Join;
    j->columns = l->columns;
    for (const auto &c : r->columns)
        if (std::find(j->columns.begin(), j->columns.end(), c) == j->columns.end())
            j->columns.push_back(c);
    j->kids.push_back(std::move(l));
    j->kids.push_back(std::move(r));
    return j;
}

int arity_of(const datalog::ProgramInfo &info, const Atom &a) {
    auto it = info.predicates.find(a.predicate);
    return it != info.predicates.end() ? it->second.arity
                                       : static_cast<int>(a.args.size());
}

/// projection(selection(joins of positive atoms) ∖ antijoins) for one rule
std::unique_ptr<Expr> rule_expr(const datalog::Rule &r, const datalog::ProgramInfo &info) {
    std::unique_ptr<Expr> cur;
    for (const auto &l : r.body)
        if (l.kind == Literal::Kind::Positive) {
            auto e = atom_expr(l.atom, arity_of(info, l.atom));
            cur = cur ? join(std::move(cur), std::move(e)) : std::move(e);
        }
    if (!cur) { // fact rule: a single empty-schema tuple, handled as Project of nothing
        cur = std::make_unique<Expr>();
        cur->kind = Expr::Kind::Leaf;
        cur->relation = ""; // unit relation
    }

    std::vector<Cond> conds;
    for (const auto &l : r.body)
        if (l.kind == Literal::Kind::Compare) {
            Cond c;
            c.lhs = l.lhs.kind == Term::Kind::Var ? l.lhs.var : "";
            c.op = l.op;
            if (l.rhs.kind == Term::Kind::Var) {
                c.rhs_is_col = true;
                c.rhs_col = l.rhs.var;
            } else {
                c.rhs_const = l.rhs;
            }
            // constant-vs-variable flips to keep the column on the left
            if (c.lhs.empty() && c.rhs_is_col) {
                c.lhs = c.rhs_col;
                c.rhs_is_col = false;
                c.rhs_const = l.lhs;
                switch (l.op) {
                case datalog::CmpOp::Lt: c.op = datalog::CmpOp::Gt; break;
                case datalog::CmpOp::Le: c.op = datalog::CmpOp::Ge; break;
                case datalog::CmpOp::Gt: c.op = datalog::CmpOp::Lt; break;
                case datalog::CmpOp::Ge: c.op = datalog::CmpOp::Le; break;
                default: break;
                }
            }
            conds.push_back(std::move(c));
        }
    if (!conds.empty()) {
        auto sel = std::make_unique<Expr>();
        sel->kind = Expr::Kind::Select;
        sel->conds = std::move(conds);
        sel->columns = cur->columns;
        sel->kids.push_back(std::move(cur));
        cur = std::move(sel);
    }

    for (const auto &l : r.body)
        if (l.kind == Literal::Kind::Negated) {
            auto diff = std::make_unique<Expr>();
            diff->kind = Expr::Kind::Diff;
            diff->columns = cur->columns;
            diff->kids.push_back(std::move(cur));
            diff->kids.push_back(atom_expr(l.atom, arity_of(info, l.atom)));
            cur = std::move(diff);
        }

    auto proj = std::make_unique<Expr>();
    proj->kind = Expr::Kind::Project;
    for (const auto &t : r.head.args) {
        if (t.kind == Term::Kind::Var) {
            proj->items.push_back({true, t.var, {}});
            proj->columns.push_back(t.var);
        } else {
            proj->items.push_back({false, "", t});
            proj->columns.push_back("$" + std::to_string(proj->columns.size() + 1));
        }
    }
    proj->kids.push_back(std::move(cur));
    return proj;
}

void collect_leaves(Expr *e, std::vector<Expr *> &out) {
    if (e->kind == Expr::Kind::Leaf) out.push_back(e);
    for (auto &k : e->kids) collect_leaves(k.get(), out);
}

} // namespace

EquationSystem compile_to_ra(const Catalog &catalog, const DatalogProgramDef &program) {
    EquationSystem sys;
    sys.info = datalog::analyze_program(catalog, program);

    for (const auto &stratum : sys.info.strata) {
        std::set<std::string> in_stratum(stratum.begin(), stratum.end());
        for (const auto &pred : stratum) {
            Equation eq;
            eq.predicate = pred;
            for (const auto &r : program.rules) {
                if (r.head.predicate != pred) continue;
                auto plain = rule_expr(r, sys.info);
                if (eq.head_columns.empty()) eq.head_columns = plain->columns;

                // delta variants: one per recursive leaf; leaves before it
                // read the current value, the leaf itself the delta, leaves
                // after it the previous iteration
                std::vector<std::unique_ptr<Expr>> variants;
                std::vector<Expr *> leaves;
                collect_leaves(plain.get(), leaves);
                std::vector<size_t> rec_positions;
                for (size_t i = 0; i < leaves.size(); ++i)
                    if (in_stratum.count(leaves[i]->relation)) rec_positions.push_back(i);
                for (size_t v = 0; v < rec_positions.size(); ++v) {
                    auto variant = plain->clone();
                    std::vector<Expr *> vleaves;
                    collect_leaves(variant.get(), vleaves);
                    for (size_t j = 0; j < rec_positions.size(); ++j) {
                        Expr *leaf = vleaves[rec_positions[j]];
                        leaf->role = j == v    ? Expr::LeafRole::Delta
                                     : j < v   ? Expr::LeafRole::Full
                                               : Expr::LeafRole::Prev;
                    }
                    variants.push_back(std::move(variant));
                }
                eq.recursive.push_back(!rec_positions.empty());
                eq.seminaive.push_back(std::move(variants));
                eq.alternatives.push_back(std::move(plain));
            }
            sys.equations.push_back(std::move(eq));
        }
    }
    return sys;
}

} // namespace emdm::ra
