#include "lineal/printer.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace lineal {

namespace {

bool near_int(double x, double& out) {
  double r = std::round(x);
  if (std::abs(x - r) < 1e-10 && std::abs(r) < 1e15) {
    out = r;
    return true;
  }
  return false;
}

bool is_square(long n) {
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n;
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string format_real(double x) {
  if (x < 0) return "-" + format_real(-x);
  double r;
  if (near_int(x, r)) return std::to_string(static_cast<long long>(r));
  for (long q = 2; q <= 20; ++q) {
    if (near_int(x * static_cast<double>(q), r))
      return std::to_string(static_cast<long long>(r)) + "/" + std::to_string(q);
  }
  // sqrt shapes, preferring the smallest denominator; ties go to p/sqrtq so
  // 1/sqrt2 wins over sqrt2/2
  long best_q = 0;
  std::string best;
  if (near_int(x * x, r) && r >= 2 && !is_square(static_cast<long>(r))) {
    best_q = 1;
    best = "sqrt" + std::to_string(static_cast<long long>(r));
  }
  for (long q = 2; q <= 20 && (best_q == 0 || q < best_q); ++q) {
    if (is_square(q)) continue;
    if (near_int(x * std::sqrt(static_cast<double>(q)), r) && r >= 1) {
      best_q = q;
      best = std::to_string(static_cast<long long>(r)) + "/sqrt" + std::to_string(q);
    }
  }
  for (long q = 2; q <= 20 && (best_q == 0 || q < best_q); ++q) {
    double y = x * static_cast<double>(q);
    if (near_int(y * y, r) && r >= 2 && !is_square(static_cast<long>(r))) {
      best_q = q;
      best = "sqrt" + std::to_string(static_cast<long long>(r)) + "/" + std::to_string(q);
    }
  }
  if (best_q != 0) return best;
  return decimal(x);
}

std::string format_scalar(const Scalar& s) {
  if (s.im == 0.0) return "(" + format_real(s.re) + ")";
  std::string re = format_real(s.re);
  double im = s.im;
  std::string sign = im < 0 ? "-" : "+";
  double mag = std::abs(im);
  double r;
  std::string imtext = near_int(mag, r) ? std::to_string(static_cast<long long>(r))
                                        : decimal(mag);
  return "(" + re + sign + imtext + "i)";
}

namespace {

// Precedence slots. BODY marks forms whose tail extends through sums
// (lambda, if); they need parentheses anywhere a + or tighter could follow.
constexpr int kPar = 0;
constexpr int kSum = 10;
constexpr int kBody = 15;
constexpr int kScale = 20;
constexpr int kApp = 30;
constexpr int kAtom = 40;

int prec_of(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Parallel: return kPar;
    case TermKind::Sum: return kSum;
    case TermKind::Abs:
    case TermKind::If: return kBody;
    case TermKind::Scale: return kScale;
    case TermKind::App: return kApp;
    default: return kAtom;
  }
}

void print_rec(const TermPtr& t, int min_prec, std::string& out) {
  bool paren = prec_of(t) < min_prec;
  if (paren) out += "(";
  switch (t->kind) {
    case TermKind::Var:
      out += t->name;
      break;
    case TermKind::Abs:
      out += "\\" + t->name;
      if (t->ann) out += ":" + type_to_string(t->ann);
      out += ".";
      print_rec(t->kids[0], kSum, out);
      break;
    case TermKind::App:
      print_rec(t->kids[0], kApp, out);
      out += " ";
      print_rec(t->kids[1], kAtom, out);
      break;
    case TermKind::Scale:
      out += format_scalar(t->weight) + ".";
      print_rec(t->kids[0], kScale, out);
      break;
    case TermKind::Sum:
      for (std::size_t i = 0; i < t->kids.size(); ++i) {
        if (i) out += " + ";
        print_rec(t->kids[i], kScale, out);
      }
      break;
    case TermKind::Zero:
      out += "zero";
      break;
    case TermKind::Ket0:
      out += "|0>";
      break;
    case TermKind::Ket1:
      out += "|1>";
      break;
    case TermKind::If:
      out += "if ";
      print_rec(t->kids[0], kSum, out);
      out += " then ";
      print_rec(t->kids[1], kSum, out);
      out += " else ";
      print_rec(t->kids[2], kSum, out);
      break;
    case TermKind::Pair: {
      auto bits = ket_bits(t);
      if (bits) {
        out += "|" + *bits + ">";
      } else {
        out += "(";
        print_rec(t->kids[0], kPar, out);
        out += ", ";
        print_rec(t->kids[1], kPar, out);
        out += ")";
      }
      break;
    }
    case TermKind::Meas:
      out += t->arity == 1 ? "pi" : "pi_" + std::to_string(t->arity);
      break;
    case TermKind::Star:
      out += "*";
      break;
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas:
      out += t->kind == TermKind::DeltaPar ? "dpar(" : "dmeas(";
      print_rec(t->kids[0], kPar, out);
      out += ", [" + t->name + "]";
      print_rec(t->kids[1], kPar, out);
      out += ", [" + t->name2 + "]";
      print_rec(t->kids[2], kPar, out);
      out += ")";
      break;
    case TermKind::Parallel:
      for (std::size_t i = 0; i < t->kids.size(); ++i) {
        if (i) out += " || ";
        print_rec(t->kids[i], kSum, out);
      }
      break;
  }
  if (paren) out += ")";
}

}  // namespace

std::string pretty(const TermPtr& t) {
  std::string out;
  print_rec(t, kPar, out);
  return out;
}

}  // namespace lineal
