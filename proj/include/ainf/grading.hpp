#pragma once

#include <Eigen/Core>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ainf/poly.hpp"

namespace ainf {

struct Bidegree {
  int codim = 0;
  int ls = 0;

  Bidegree operator+(Bidegree o) const { return {codim + o.codim, (ls + o.ls) & 1}; }
  Bidegree shift(int p, int q) const { return {codim + p, ((ls + q) % 2 + 2) % 2}; }
  auto operator<=>(const Bidegree&) const = default;
};

// (-1)^{d * sum(codim_i - 1)}
int koszul_sign(int d, std::span<const Bidegree> degrees);

// Q when num_alphas == 0, otherwise Q[alpha_1..alpha_n]
struct Ring {
  int num_alphas = 0;
  bool is_field() const { return num_alphas == 0; }
  bool operator==(const Ring&) const = default;
};

class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(Ring ring, std::vector<std::string> names, std::vector<Bidegree> degrees);

  const Ring& ring() const { return ring_; }
  int dim() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  Bidegree degree(int i) const { return degrees_[i]; }
  const std::vector<Bidegree>& degrees() const { return degrees_; }
  int index(const std::string& name) const;  // throws UnknownBasis
  bool has(const std::string& name) const { return lookup_.count(name) != 0; }
  GradedModule with_ring(Ring r) const { return GradedModule(r, names_, degrees_); }
  bool operator==(const GradedModule& o) const {
    return ring_ == o.ring_ && names_ == o.names_ && degrees_ == o.degrees_;
  }

 private:
  Ring ring_;
  std::vector<std::string> names_;
  std::vector<Bidegree> degrees_;
  std::unordered_map<std::string, int> lookup_;
};

// sparse module element: basis index -> coefficient
using Vec = std::map<int, Poly>;

void add_to(Vec& v, int i, const Poly& c);
void axpy(Vec& v, const Poly& c, const Vec& x);
Vec scaled(const Vec& v, int s);
std::string vec_str(const GradedModule& m, const Vec& v);

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

// Linear map with a fixed bidegree. Entry (r, c) with coefficient of alpha-degree t
// must satisfy deg(r) + (2t, 0) = deg(c) + degree; this is checked on construction.
class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(GradedModule source, GradedModule target, Bidegree degree, Mat<Poly> m);

  static GradedMatrix zero(const GradedModule& source, const GradedModule& target, Bidegree degree);
  static GradedMatrix identity(const GradedModule& m);

  const GradedModule& source() const { return source_; }
  const GradedModule& target() const { return target_; }
  Bidegree degree() const { return degree_; }
  const Mat<Poly>& m() const { return m_; }
  const Poly& operator()(int r, int c) const { return m_(r, c); }

  Vec apply(const Vec& x) const;
  Vec column(int c) const;
  bool is_zero() const;
  GradedMatrix retarget(const GradedModule& source, const GradedModule& target) const;

  friend bool operator==(const GradedMatrix& a, const GradedMatrix& b);

 private:
  GradedModule source_, target_;
  Bidegree degree_;
  Mat<Poly> m_;
};

// b after a
GradedMatrix compose(const GradedMatrix& b, const GradedMatrix& a);
GradedMatrix operator+(const GradedMatrix& a, const GradedMatrix& b);
GradedMatrix operator-(const GradedMatrix& a, const GradedMatrix& b);
GradedMatrix scaled(const GradedMatrix& a, const Poly& s);
// the sign-twisted map x -> (-1)^{codim x} f(x)
GradedMatrix sign_twist(const GradedMatrix& f);

GradedMatrix unipotent_inverse(const GradedMatrix& m);

}  // namespace ainf
