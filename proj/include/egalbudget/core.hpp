// Core data model: approval-voting instances, budget distributions,
// utilities and egalitarian welfare, plus the worst-case instance families
// used throughout the test suite.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace egb {

// Global comparison tolerance for non-strict inequalities.
inline constexpr double kEps = 1e-9;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An approval-voting instance: n agents, m projects, one non-empty
/// approval set per agent. Indices are 0-based throughout.
class Instance {
 public:
  Instance(int num_projects, std::vector<std::vector<int>> approvals)
      : m_(num_projects), approvals_(std::move(approvals)) {
    if (m_ < 1) throw InputError("instance needs at least one project");
    if (approvals_.empty()) throw InputError("instance needs at least one agent");
    const int n = static_cast<int>(approvals_.size());
    membership_.assign(static_cast<size_t>(n) * m_, 0);
    scores_.assign(m_, 0);
    for (int i = 0; i < n; ++i) {
      auto& a = approvals_[i];
      if (a.empty())
        throw InputError("agent " + std::to_string(i) + " has an empty approval set");
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      for (int j : a) {
        if (j < 0 || j >= m_)
          throw InputError("agent " + std::to_string(i) + " approves out-of-range project " +
                           std::to_string(j));
        membership_[static_cast<size_t>(i) * m_ + j] = 1;
        ++scores_[j];
      }
    }
  }

  int num_agents() const { return static_cast<int>(approvals_.size()); }
  int num_projects() const { return m_; }

  const std::vector<int>& approval_set(int i) const {
    check_agent(i);
    return approvals_[i];
  }

  bool approves(int i, int j) const {
    check_agent(i);
    check_project(j);
    return membership_[static_cast<size_t>(i) * m_ + j] != 0;
  }

  /// |N(p_j)|: how many agents approve project j.
  int approval_score(int j) const {
    check_project(j);
    return scores_[j];
  }

  int max_approval_score() const {
    return *std::max_element(scores_.begin(), scores_.end());
  }

  /// Agents approving project j, ascending.
  std::vector<int> approvers(int j) const {
    check_project(j);
    std::vector<int> out;
    for (int i = 0; i < num_agents(); ++i)
      if (approves(i, j)) out.push_back(i);
    return out;
  }

  bool operator==(const Instance& o) const {
    return m_ == o.m_ && approvals_ == o.approvals_;
  }

 private:
  void check_agent(int i) const {
    if (i < 0 || i >= num_agents())
      throw InputError("agent index out of range: " + std::to_string(i));
  }
  void check_project(int j) const {
    if (j < 0 || j >= m_)
      throw InputError("project index out of range: " + std::to_string(j));
  }

  int m_;
  std::vector<std::vector<int>> approvals_;
  std::vector<uint8_t> membership_;
  std::vector<int> scores_;
};

/// A point of the m-simplex: budget shares per project.
class Distribution {
 public:
  explicit Distribution(std::vector<double> shares) : x_(std::move(shares)) {
    if (x_.empty()) throw InputError("distribution must have at least one entry");
    double sum = 0.0;
    for (double& v : x_) {
      if (!std::isfinite(v)) throw InputError("distribution entry is not finite");
      if (v < -1e-12) throw InputError("distribution entry is negative");
      if (v < 0.0) v = 0.0;
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw InputError("distribution shares sum to " + std::to_string(sum) + ", expected 1");
  }

  int size() const { return static_cast<int>(x_.size()); }
  double operator[](int j) const { return x_[j]; }
  const std::vector<double>& shares() const { return x_; }

 private:
  std::vector<double> x_;
};

inline void require_compatible(const Instance& inst, const Distribution& x) {
  if (x.size() != inst.num_projects())
    throw InputError("distribution has " + std::to_string(x.size()) +
                     " entries for an instance with " +
                     std::to_string(inst.num_projects()) + " projects");
}

/// u_i(x): budget mass on agent i's approved projects.
inline double utility(const Instance& inst, const Distribution& x, int i) {
  require_compatible(inst, x);
  double u = 0.0;
  for (int j : inst.approval_set(i)) u += x[j];
  return u;
}

inline std::vector<double> utility_profile(const Instance& inst, const Distribution& x) {
  require_compatible(inst, x);
  std::vector<double> u(inst.num_agents());
  for (int i = 0; i < inst.num_agents(); ++i) u[i] = utility(inst, x, i);
  return u;
}

/// sw(I,x) = min_i u_i(x).
inline double egalitarian_welfare(const Instance& inst, const Distribution& x) {
  const auto u = utility_profile(inst, x);
  return *std::min_element(u.begin(), u.end());
}

/// sw(I,x) / sw*. Requires a positive optimum.
inline double normalized_welfare(const Instance& inst, const Distribution& x,
                                 double sw_star) {
  if (sw_star <= 0.0)
    throw InputError("normalized welfare requires a positive optimal welfare");
  return egalitarian_welfare(inst, x) / sw_star;
}

// ---- Worst-case instance families -----------------------------------------
//
// Project indexing is 0-based; the construction notes below map to the usual
// 1-based description of each family.

/// Two projects: agents 0..n-2 approve project 0, agent n-1 approves
/// project 1. Optimal egalitarian welfare is 1/2.
inline Instance ufs_gap_instance(int n) {
  if (n < 2) throw InputError("ufs_gap_instance requires n >= 2");
  std::vector<std::vector<int>> a(n, std::vector<int>{0});
  a[n - 1] = {1};
  return Instance(2, std::move(a));
}

/// 2n+1 projects; agent i approves {2i, 2i+1, (2i+2) mod 2n, 2n}.
/// Project 2n is common to everyone; project 2i+1 is private to agent i.
inline Instance gfs_tight_instance(int n) {
  if (n < 2) throw InputError("gfs_tight_instance requires n >= 2");
  const int m = 2 * n + 1;
  std::vector<std::vector<int>> a(n);
  for (int i = 0; i < n; ++i) a[i] = {2 * i, 2 * i + 1, (2 * i + 2) % (2 * n), 2 * n};
  return Instance(m, std::move(a));
}

/// The distribution placing 1/n on each agent's private project of
/// gfs_tight_instance(n); every agent's utility is exactly 1/n.
inline Distribution gfs_tight_witness_distribution(int n) {
  if (n < 2) throw InputError("gfs_tight_witness_distribution requires n >= 2");
  std::vector<double> x(2 * n + 1, 0.0);
  for (int i = 0; i < n; ++i) x[2 * i + 1] = 1.0 / n;
  return Distribution(std::move(x));
}

/// m = n^{k+1}+1 projects; agent i approves n^k private projects plus the
/// last project, which is the pairwise intersection of all approval sets.
inline Instance es_instance(int n, int k) {
  if (n < 2) throw InputError("es_instance requires n >= 2");
  if (k < 1) throw InputError("es_instance requires k >= 1");
  std::int64_t block = 1;
  for (int t = 0; t < k; ++t) block *= n;
  const std::int64_t m64 = block * n + 1;
  if (m64 > 200000) throw CapExceeded("es_instance: too many projects");
  const int m = static_cast<int>(m64);
  std::vector<std::vector<int>> a(n);
  for (int i = 0; i < n; ++i) {
    for (std::int64_t j = i * block; j < (i + 1) * block; ++j)
      a[i].push_back(static_cast<int>(j));
    a[i].push_back(m - 1);
  }
  return Instance(m, std::move(a));
}

/// Agents 0..n-2 approve projects 0..m-2; agent n-1 approves project m-1.
inline Instance pv_instance(int n, int m) {
  if (n < 2) throw InputError("pv_instance requires n >= 2");
  if (m < 2) throw InputError("pv_instance requires m >= 2");
  std::vector<std::vector<int>> a(n);
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < m; ++j) a[i].push_back(j);
  a[n - 1] = {m - 1};
  return Instance(m, std::move(a));
}

/// m = C(n-1,2)+1 projects. Each of the first C(n-1,2) projects is
/// disapproved by a unique pair of the first n-1 agents (pairs in
/// lexicographic order) and approved by everyone else; the last project is
/// approved exactly by the first n-1 agents. Scores: (n-2,...,n-2, n-1).
inline Instance cut_instance(int n) {
  if (n < 4) throw InputError("cut_instance requires n >= 4");
  const int m = (n - 1) * (n - 2) / 2 + 1;
  std::vector<std::vector<int>> a(n);
  int j = 0;
  for (int p = 0; p + 1 < n - 1; ++p) {
    for (int q = p + 1; q < n - 1; ++q, ++j) {
      for (int i = 0; i < n; ++i)
        if (i != p && i != q) a[i].push_back(j);
    }
  }
  for (int i = 0; i + 1 < n; ++i) a[i].push_back(m - 1);
  return Instance(m, std::move(a));
}

}  // namespace egb
