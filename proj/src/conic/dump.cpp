#include <cstdio>
#include <sstream>

#include "aris/conic.hpp"

namespace aris::conic {

namespace {

void put_matrix(std::ostringstream& os, const CMat& m, const char* indent) {
  char buf[96];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << indent;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, " %.17g%+.17gj", m(i, j).real(), m(i, j).imag());
      os << buf;
    }
    os << "\n";
  }
}

void put_affine(std::ostringstream& os, const Affine& a, const SdpProblem& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", a.constant);
  os << "  constant " << buf << "\n";
  for (const auto& t : a.terms) {
    os << "  trace " << p.block_names[t.block] << "\n";
    put_matrix(os, t.coeff, "   ");
  }
}

const char* sense(Sense s) { return s == Sense::Equal ? "=" : "<="; }

}  // namespace

std::string dump(const SdpProblem& p) {
  std::ostringstream os;
  char buf[64];
  os << "sdp " << p.block_dims.size() << " blocks\n";
  for (std::size_t b = 0; b < p.block_dims.size(); ++b)
    os << "block " << p.block_names[b] << " hermitian psd " << p.block_dims[b] << "\n";
  os << "maximize\n";
  put_affine(os, p.objective, p);
  for (const auto& l : p.log_terms) {
    std::snprintf(buf, sizeof buf, "%.17g", l.weight);
    os << "log " << l.label << " weight " << buf << "\n";
    put_affine(os, l.arg, p);
  }
  for (const auto& c : p.linear) {
    std::snprintf(buf, sizeof buf, "%.17g", c.rhs);
    os << "linear " << c.label << " " << sense(c.sense) << " " << buf << "\n";
    put_affine(os, c.lhs, p);
  }
  for (const auto& e : p.entries) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    os << "entry " << p.block_names[e.block] << "[" << e.index << "," << e.index << "] "
       << sense(e.sense) << " " << buf << "\n";
  }
  for (const auto& m : p.lmis) {
    const Eigen::Index k = m.sub_dim * m.factor.cols() + 1;
    os << "lmi " << m.label << " size " << k << " [[t, vec(X L)^H], [vec(X L), I]] >= 0, X = "
       << p.block_names[m.block] << "[0:" << m.sub_dim << ",0:" << m.sub_dim << "]\n";
    os << "  factor L\n";
    put_matrix(os, m.factor, "   ");
    os << "  t\n";
    put_affine(os, m.bound, p);
  }
  return os.str();
}

}  // namespace aris::conic
