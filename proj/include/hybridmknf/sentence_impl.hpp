#pragma once

namespace hmknf {

template <typename Fixed>
Formula substitute(const Formula& f, const Fixed& fixedValue) {
    switch (f->op) {
        case Op::True:
        case Op::False: return f;
        case Op::Atom: {
            int v = fixedValue(f->atom);
            if (v < 0) return f;
            return v ? top() : bot();
        }
        case Op::Neg: return neg(substitute(f->kids[0], fixedValue));
        case Op::And:
        case Op::Or: {
            std::vector<Formula> kids;
            kids.reserve(f->kids.size());
            for (const auto& k : f->kids) kids.push_back(substitute(k, fixedValue));
            return f->op == Op::And ? conj(std::move(kids)) : disj(std::move(kids));
        }
        case Op::Implies:
            return implies(substitute(f->kids[0], fixedValue), substitute(f->kids[1], fixedValue));
        case Op::Know: return know(substitute(f->kids[0], fixedValue));
        case Op::NotDefault: return notD(substitute(f->kids[0], fixedValue));
    }
    return f;
}

}  // namespace hmknf
