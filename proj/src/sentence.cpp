#include "hybridmknf/sentence.hpp"

#include <algorithm>

namespace hmknf {

namespace {

Formula make(Op op, std::vector<Formula> kids = {}, AtomId atom = 0) {
    return std::make_shared<const Node>(Node{op, atom, std::move(kids)});
}

const Formula kTop = make(Op::True);
const Formula kBot = make(Op::False);

}  // namespace

Formula top() { return kTop; }
Formula bot() { return kBot; }
Formula atomF(AtomId atom) { return make(Op::Atom, {}, atom); }

Formula neg(Formula f) {
    if (f->op == Op::True) return kBot;
    if (f->op == Op::False) return kTop;
    if (f->op == Op::Neg) return f->kids[0];
    return make(Op::Neg, {std::move(f)});
}

Formula conj(std::vector<Formula> fs) {
    std::vector<Formula> kids;
    for (auto& f : fs) {
        if (f->op == Op::False) return kBot;
        if (f->op == Op::True) continue;
        if (f->op == Op::And)
            kids.insert(kids.end(), f->kids.begin(), f->kids.end());
        else
            kids.push_back(std::move(f));
    }
    if (kids.empty()) return kTop;
    if (kids.size() == 1) return kids[0];
    return make(Op::And, std::move(kids));
}

Formula disj(std::vector<Formula> fs) {
    std::vector<Formula> kids;
    for (auto& f : fs) {
        if (f->op == Op::True) return kTop;
        if (f->op == Op::False) continue;
        if (f->op == Op::Or)
            kids.insert(kids.end(), f->kids.begin(), f->kids.end());
        else
            kids.push_back(std::move(f));
    }
    if (kids.empty()) return kBot;
    if (kids.size() == 1) return kids[0];
    return make(Op::Or, std::move(kids));
}

Formula implies(Formula antecedent, Formula consequent) {
    if (antecedent->op == Op::False || consequent->op == Op::True) return kTop;
    if (antecedent->op == Op::True) return consequent;
    if (consequent->op == Op::False) return neg(std::move(antecedent));
    return make(Op::Implies, {std::move(antecedent), std::move(consequent)});
}

Formula iff(Formula a, Formula b) { return conj({implies(a, b), implies(b, a)}); }

Formula know(Formula f) {
    if (f->op == Op::True || f->op == Op::False) return f;
    return make(Op::Know, {std::move(f)});
}

Formula notD(Formula f) {
    if (f->op == Op::True) return kBot;
    if (f->op == Op::False) return kTop;
    return make(Op::NotDefault, {std::move(f)});
}

bool isObjective(const Formula& f) {
    if (f->op == Op::Know || f->op == Op::NotDefault) return false;
    return std::all_of(f->kids.begin(), f->kids.end(), [](const Formula& k) { return isObjective(k); });
}

void collectAtoms(const Formula& f, std::vector<AtomId>& out) {
    if (f->op == Op::Atom) {
        out.push_back(f->atom);
        return;
    }
    for (const auto& k : f->kids) collectAtoms(k, out);
}

std::vector<AtomId> atomsOf(const Formula& f) {
    std::vector<AtomId> out;
    collectAtoms(f, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<AtomId> atomsOf(const Theory& t) {
    std::vector<AtomId> out;
    for (const auto& f : t) collectAtoms(f, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void flattenConjunction(const Formula& f, std::vector<Formula>& out) {
    if (f->op == Op::And) {
        for (const auto& k : f->kids) flattenConjunction(k, out);
    } else if (f->op != Op::True) {
        out.push_back(f);
    }
}

namespace {

void print(const Formula& f, const Signature& sig, std::string& out, bool nested) {
    auto joined = [&](const char* sep) {
        if (nested) out += '(';
        for (std::size_t i = 0; i < f->kids.size(); ++i) {
            if (i) out += sep;
            print(f->kids[i], sig, out, true);
        }
        if (nested) out += ')';
    };
    switch (f->op) {
        case Op::True: out += "top"; break;
        case Op::False: out += "bot"; break;
        case Op::Atom: out += sig.atomName(f->atom); break;
        case Op::Neg: out += '~'; print(f->kids[0], sig, out, true); break;
        case Op::And: joined(" & "); break;
        case Op::Or: joined(" | "); break;
        case Op::Implies: joined(" -> "); break;
        case Op::Know: out += "K "; print(f->kids[0], sig, out, true); break;
        case Op::NotDefault: out += "not "; print(f->kids[0], sig, out, true); break;
    }
}

}  // namespace

std::string toString(const Formula& f, const Signature& sig) {
    std::string out;
    print(f, sig, out, false);
    return out;
}

}  // namespace hmknf
