#include "ghecke/rational.hpp"

#include <sstream>

namespace ghecke {

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw input_error("malformed rational: '" + s + "'");
    if (q.get_den() == 0) throw input_error("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& x) {
    return x.get_str();
}

bool rat_is_int(const Rat& x) {
    return x.get_den() == 1;
}

long rat_to_long(const Rat& x) {
    if (!rat_is_int(x)) throw std::logic_error("rat_to_long on non-integer " + rat_str(x));
    if (!x.get_num().fits_slong_p()) throw std::logic_error("rat_to_long overflow");
    return x.get_num().get_si();
}

bool rat_sqrt(const Rat& x, Rat* root) {
    if (sgn(x) < 0) return false;
    mpz_class num = x.get_num(), den = x.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    if (root) *root = Rat(rn, rd);
    return true;
}

std::size_t hash_combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_int_vec(const std::vector<int>& v) {
    std::size_t h = std::hash<std::size_t>()(v.size());
    for (int x : v) h = hash_combine(h, std::hash<int>()(x));
    return h;
}

std::string rat_vec_str(const std::vector<Rat>& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << rat_str(v[i]);
    }
    os << ")";
    return os.str();
}

}  // namespace ghecke
