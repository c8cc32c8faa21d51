#include "asep/kernel.hpp"

#include "asep/error.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace asep {

namespace {

const KernelTerm* find_term(const std::vector<KernelTerm>& terms, const Site& z) {
  auto it = std::lower_bound(terms.begin(), terms.end(), z,
                             [](const KernelTerm& t, const Site& s) { return t.z < s; });
  return (it != terms.end() && it->z == z) ? &*it : nullptr;
}

}  // namespace

double JumpKernel::p(const Site& z) const {
  const auto* t = find_term(terms_, z);
  return t ? t->p : 0.0;
}
double JumpKernel::a(const Site& z) const {
  const auto* t = find_term(terms_, z);
  return t ? t->a : 0.0;
}
double JumpKernel::b(const Site& z) const {
  const auto* t = find_term(terms_, z);
  return t ? t->b : 0.0;
}

Eigen::MatrixXd JumpKernel::S_from_symmetric_part() const {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& t : terms_)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) s(i, j) += 0.5 * t.a * t.z[i] * t.z[j];
  return s;
}

std::vector<Rational> JumpKernel::S_exact() const {
  std::vector<Rational> s(static_cast<std::size_t>(dim_ * dim_));
  for (const auto& t : terms_)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        s[static_cast<std::size_t>(i * dim_ + j)] += t.p_exact * t.z[i] * t.z[j] / 2;
  return s;
}

bool JumpKernel::is_symmetric() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const KernelTerm& t) { return is_zero(t.b_exact) && t.b == 0.0; });
}

JumpKernel JumpKernel::reversed() const {
  JumpKernel r = *this;
  for (auto& t : r.terms_) {
    std::swap(t.p, t.p_rev);
    std::swap(t.p_exact, t.p_rev_exact);
    t.b = -t.b;
    t.b_exact = -t.b_exact;
  }
  // S is invariant under z -> -z.
  return r;
}

JumpKernel build_kernel(int dimension, const std::vector<JumpSpec>& jumps) {
  if (dimension < 1 || dimension > kMaxDim)
    throw Error(ErrorCode::DimensionMismatch, "dimension must lie in [1, " + std::to_string(kMaxDim) + "]");

  std::map<Site, std::pair<double, Rational>> weights;
  double total = 0.0;
  for (const auto& jump : jumps) {
    for (int i = dimension; i < kMaxDim; ++i)
      if (jump.z[i] != 0) throw Error(ErrorCode::DimensionMismatch, "jump vector has more than " + std::to_string(dimension) + " coordinates");
    Rational exact;
    if (!parse_decimal(jump.weight, exact))
      throw Error(ErrorCode::ConfigParse, "weight '" + jump.weight + "' is not a decimal number");
    double value = std::strtod(jump.weight.c_str(), nullptr);
    if (exact < 0) throw Error(ErrorCode::NegativeWeight, "p" + to_string(jump.z, dimension) + " = " + jump.weight);
    if (jump.z.is_origin()) {
      if (!is_zero(exact)) throw Error(ErrorCode::ZeroSiteWeight, "p(0) = " + jump.weight + " must be zero");
      continue;
    }
    if (weights.count(jump.z)) throw Error(ErrorCode::DuplicateVector, "z = " + to_string(jump.z, dimension) + " listed twice");
    total += value;
    if (!is_zero(exact)) weights.emplace(jump.z, std::make_pair(value, exact));
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sum of weights is " << total;
    throw Error(ErrorCode::NotNormalized, msg.str());
  }

  JumpKernel k;
  k.dim_ = dimension;
  std::map<Site, KernelTerm> terms;
  for (const auto& [z, w] : weights) {
    for (const Site& s : {z, -z}) {
      auto& t = terms[s];
      t.z = s;
    }
    terms[z].p = w.first;
    terms[z].p_exact = w.second;
    terms[-z].p_rev = w.first;
    terms[-z].p_rev_exact = w.second;
  }
  for (auto& [z, t] : terms) {
    t.a = (t.p + t.p_rev) / 2;
    t.b = (t.p - t.p_rev) / 2;
    t.a_exact = (t.p_exact + t.p_rev_exact) / 2;
    t.b_exact = (t.p_exact - t.p_rev_exact) / 2;
    for (int i = 0; i < dimension; ++i) k.range_ = std::max(k.range_, std::abs(z[i]));
    k.terms_.push_back(t);
  }
  k.s_ = Eigen::MatrixXd::Zero(dimension, dimension);
  for (const auto& t : k.terms_)
    for (int i = 0; i < dimension; ++i)
      for (int j = 0; j < dimension; ++j) k.s_(i, j) += 0.5 * t.p * t.z[i] * t.z[j];
  return k;
}

JumpKernel build_kernel(int dimension, const std::vector<std::pair<Site, double>>& jumps) {
  std::vector<JumpSpec> specs;
  specs.reserve(jumps.size());
  for (const auto& [z, w] : jumps) specs.push_back({z, shortest_decimal(w)});
  return build_kernel(dimension, specs);
}

IrreducibilityVerdict check_irreducibility(const JumpKernel& k) {
  const int d = k.dimension();
  std::vector<std::vector<long long>> rows;
  for (const auto& t : k.terms())
    if (t.a > 0) {
      std::vector<long long> row(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) row[static_cast<std::size_t>(i)] = t.z[i];
      rows.push_back(std::move(row));
    }

  // Integer row reduction to echelon (Hermite) form; the lattice spanned by the
  // rows is unchanged by unimodular row operations.
  std::size_t pivot_row = 0;
  long long index = 1;
  for (int col = 0; col < d && pivot_row < rows.size(); ++col) {
    auto c = static_cast<std::size_t>(col);
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][c] != 0 && (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool reduced = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        long long q = rows[r][c] / rows[pivot_row][c];
        for (std::size_t j = c; j < static_cast<std::size_t>(d); ++j) rows[r][j] -= q * rows[pivot_row][j];
        if (rows[r][c] != 0) reduced = false;
      }
      if (reduced) {
        index *= std::llabs(rows[pivot_row][c]);
        ++pivot_row;
        break;
      }
    }
  }

  IrreducibilityVerdict v;
  v.rank = static_cast<int>(pivot_row);
  if (v.rank == d) {
    v.index = index;
    v.generates_lattice = index == 1;
    if (!v.generates_lattice)
      v.witness = "support of a(.) generates a sublattice of index " + std::to_string(index);
  } else {
    v.witness = "support of a(.) spans a lattice of rank " + std::to_string(v.rank) + " < " + std::to_string(d);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(k.S());
  const auto& sv = svd.singularValues();
  v.s_invertible = sv.size() > 0 && sv(sv.size() - 1) > 1e-12 * sv(0);
  return v;
}

JumpKernel kernel_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigParse, e.what());
  }
  if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("jumps"))
    throw Error(ErrorCode::ConfigParse, "kernel document needs \"dimension\" and \"jumps\"");
  if (!doc["dimension"].is_number_integer()) throw Error(ErrorCode::ConfigParse, "\"dimension\" must be an integer");
  int d = doc["dimension"].get<int>();
  if (d < 1 || d > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "unsupported dimension " + std::to_string(d));
  std::vector<JumpSpec> jumps;
  for (const auto& j : doc["jumps"]) {
    if (!j.contains("z") || !j.contains("p") || !j["z"].is_array())
      throw Error(ErrorCode::ConfigParse, "each jump needs \"z\" (array) and \"p\"");
    if (static_cast<int>(j["z"].size()) != d)
      throw Error(ErrorCode::DimensionMismatch, "jump vector " + j["z"].dump() + " does not have " + std::to_string(d) + " coordinates");
    JumpSpec spec;
    for (int i = 0; i < d; ++i) {
      if (!j["z"][static_cast<std::size_t>(i)].is_number_integer())
        throw Error(ErrorCode::ConfigParse, "jump vector entries must be integers");
      spec.z[i] = j["z"][static_cast<std::size_t>(i)].get<int>();
    }
    // nlohmann prints the shortest round-trip decimal, which is the text the
    // user wrote for any weight with at most 17 significant digits.
    if (j["p"].is_string())
      spec.weight = j["p"].get<std::string>();
    else if (j["p"].is_number())
      spec.weight = j["p"].dump();
    else
      throw Error(ErrorCode::ConfigParse, "weight must be a number");
    jumps.push_back(std::move(spec));
  }
  return build_kernel(d, jumps);
}

JumpKernel load_kernel_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return kernel_from_json_text(buf.str());
}

namespace kernels {

JumpKernel ssep_1d() { return build_kernel(1, std::vector<JumpSpec>{{Site{1}, "0.5"}, {Site{-1}, "0.5"}}); }

JumpKernel tasep_1d() { return build_kernel(1, std::vector<JumpSpec>{{Site{1}, "1"}}); }

JumpKernel ssep_2d() {
  return build_kernel(2, std::vector<JumpSpec>{
                             {Site{1, 0}, "0.25"}, {Site{-1, 0}, "0.25"}, {Site{0, 1}, "0.25"}, {Site{0, -1}, "0.25"}});
}

JumpKernel asymmetric_2d() {
  return build_kernel(2, std::vector<JumpSpec>{
                             {Site{1, 0}, "0.4"}, {Site{0, 1}, "0.3"}, {Site{-1, 0}, "0.2"}, {Site{0, -1}, "0.1"}});
}

}  // namespace kernels

}  // namespace asep
