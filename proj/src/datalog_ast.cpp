#include "emdm/datalog_ast.hpp"

namespace emdm::datalog {

const char *cmp_op_text(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::string Term::to_string() const {
    switch (kind) {
    case Kind::Var: return var;
    case Kind::Int: return std::to_string(ival);
    case Kind::Text: return "\"" + sval + "\"";
    }
    return "?";
}

std::string Atom::to_string() const {
    std::string out = predicate + "(";
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i].to_string();
    }
    return out + ")";
}

std::string Literal::to_string() const {
    switch (kind) {
    case Kind::Positive: return atom.to_string();
    case Kind::Negated: return "!" + atom.to_string();
    case Kind::Compare:
        return lhs.to_string() + " " + cmp_op_text(op) + " " + rhs.to_string();
    }
    return "?";
}

std::string Rule::to_string() const {
    std::string out = head.to_string();
    if (!body.empty()) {
        out += " :- ";
        for (size_t i = 0; i < body.size(); ++i) {
            if (i) out += ", ";
            out += body[i].to_string();
        }
    }
    return out;
}

} // namespace emdm::datalog
