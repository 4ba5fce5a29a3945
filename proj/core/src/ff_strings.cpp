#include "qfisim/ff/strings.hpp"

#include <cmath>
#include <stdexcept>

namespace qfisim::ff {

StringMonomial jw_string(MonomialKind kind, int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("jw_string: negative site");
  StringMonomial m;
  m.lo = std::min(i, j);
  m.hi = std::max(i, j);
  switch (kind) {
    case MonomialKind::CdagC:
      if (i == j) {
        m.end_lo = m.end_hi = SiteOp::Pdn;  // number operator: fermion = spin down
      } else if (i < j) {
        m.sign = 1.0;
        m.end_lo = SiteOp::Sm;
        m.end_hi = SiteOp::Sp;
      } else {
        m.sign = 1.0;
        m.end_lo = SiteOp::Sp;
        m.end_hi = SiteOp::Sm;
      }
      break;
    case MonomialKind::CCdag:
      if (i == j) {
        m.end_lo = m.end_hi = SiteOp::Pup;
      } else if (i < j) {
        m.sign = -1.0;
        m.end_lo = SiteOp::Sp;
        m.end_hi = SiteOp::Sm;
      } else {
        m.sign = -1.0;
        m.end_lo = SiteOp::Sm;
        m.end_hi = SiteOp::Sp;
      }
      break;
    case MonomialKind::CdagCdag:
      if (i == j) {
        m.zero = true;
      } else {
        m.sign = (i < j) ? 1.0 : -1.0;
        m.end_lo = m.end_hi = SiteOp::Sm;
      }
      break;
    case MonomialKind::CC:
      if (i == j) {
        m.zero = true;
      } else {
        m.sign = (i < j) ? -1.0 : 1.0;
        m.end_lo = m.end_hi = SiteOp::Sp;
      }
      break;
  }
  return m;
}

SiteExpectations::SiteExpectations(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const cplx d = s * cplx(std::cos(phi), std::sin(phi));
  val[std::size_t(SiteOp::Id)] = 1.0;
  val[std::size_t(SiteOp::Sp)] = c * d;             // <sigma+> = cos(th/2) sin(th/2) e^{i phi}
  val[std::size_t(SiteOp::Sm)] = c * std::conj(d);  // <sigma->
  val[std::size_t(SiteOp::Z)] = c * c - s * s;
  val[std::size_t(SiteOp::Pup)] = c * c;
  val[std::size_t(SiteOp::Pdn)] = s * s;
}

namespace {

struct ScaledOp {
  double scale;  // 0 encodes the zero operator
  SiteOp op;
};

// Closed multiplication table of {Id, sigma+, sigma-, Z, Pup, Pdn}: every
// product is (+-1 or 0) times another table member. Row = left factor.
constexpr ScaledOp kMul[6][6] = {
    /* Id  */ {{1, SiteOp::Id}, {1, SiteOp::Sp}, {1, SiteOp::Sm}, {1, SiteOp::Z},
               {1, SiteOp::Pup}, {1, SiteOp::Pdn}},
    /* Sp  */ {{1, SiteOp::Sp}, {0, SiteOp::Id}, {1, SiteOp::Pup}, {-1, SiteOp::Sp},
               {0, SiteOp::Id}, {1, SiteOp::Sp}},
    /* Sm  */ {{1, SiteOp::Sm}, {1, SiteOp::Pdn}, {0, SiteOp::Id}, {1, SiteOp::Sm},
               {1, SiteOp::Sm}, {0, SiteOp::Id}},
    /* Z   */ {{1, SiteOp::Z}, {1, SiteOp::Sp}, {-1, SiteOp::Sm}, {1, SiteOp::Id},
               {1, SiteOp::Pup}, {-1, SiteOp::Pdn}},
    /* Pup */ {{1, SiteOp::Pup}, {1, SiteOp::Sp}, {0, SiteOp::Id}, {1, SiteOp::Pup},
               {1, SiteOp::Pup}, {0, SiteOp::Id}},
    /* Pdn */ {{1, SiteOp::Pdn}, {0, SiteOp::Id}, {1, SiteOp::Sm}, {-1, SiteOp::Pdn},
               {0, SiteOp::Id}, {1, SiteOp::Pdn}},
};

}  // namespace

cplx expect_string(const StringMonomial& m, const SiteExpectations& e) {
  if (m.zero) return 0.0;
  cplx acc(m.sign, 0.0);
  for (int s = m.lo; s <= m.hi; ++s) acc *= e.val[std::size_t(m.op_at(s))];
  return acc;
}

cplx expect_string_pair(const StringMonomial& a, const StringMonomial& b,
                        const SiteExpectations& e) {
  if (a.zero || b.zero) return 0.0;
  const int lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
  double scale = a.sign * b.sign;
  cplx acc(1.0, 0.0);
  for (int s = lo; s <= hi; ++s) {
    const ScaledOp p = kMul[std::size_t(a.op_at(s))][std::size_t(b.op_at(s))];
    if (p.scale == 0.0) return 0.0;
    scale *= p.scale;
    acc *= e.val[std::size_t(p.op)];
  }
  return scale * acc;
}

Eigen::MatrixXcd realize_string(const StringMonomial& m, int n_sites) {
  if (n_sites < 1 || n_sites > 14)
    throw std::invalid_argument("realize_string: n_sites out of dense range");
  if (m.hi >= n_sites) throw std::invalid_argument("realize_string: support exceeds chain");
  const std::int64_t dim = std::int64_t(1) << n_sites;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  if (m.zero) return out;
  for (std::int64_t col = 0; col < dim; ++col) {
    double amp = m.sign;
    std::int64_t row = col;
    bool dead = false;
    for (int s = m.lo; s <= m.hi && !dead; ++s) {
      const int shift = n_sites - 1 - s;
      const bool down = (col >> shift) & 1;
      switch (m.op_at(s)) {
        case SiteOp::Id:
          break;
        case SiteOp::Z:
          if (down) amp = -amp;
          break;
        case SiteOp::Pup:
          if (down) dead = true;
          break;
        case SiteOp::Pdn:
          if (!down) dead = true;
          break;
        case SiteOp::Sp:  // |up><down|
          if (!down)
            dead = true;
          else
            row ^= (std::int64_t(1) << shift);
          break;
        case SiteOp::Sm:  // |down><up|
          if (down)
            dead = true;
          else
            row ^= (std::int64_t(1) << shift);
          break;
      }
    }
    if (!dead) out(row, col) += amp;
  }
  return out;
}

}  // namespace qfisim::ff
