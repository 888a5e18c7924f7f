#pragma once

#include "stackyfan/fan.hpp"
#include "stackyfan/integer.hpp"
#include "stackyfan/triangulation.hpp"

#include <cstdint>
#include <string>

namespace stackyfan {

/// [A^{r+1} / mu_n^r] with mu_n^r acting anti-diagonally.
struct QuotientModel {
  int r = 0;
  std::int64_t n = 1;
};

/// Order of mu_n^r, i.e. n^r.
Integer group_order(const QuotientModel& model);

/// The orthant cone n e_i expressed in a basis of L_n; its cokernel is the
/// group acting on the quotient.
IntMatrix model_lattice_map(const QuotientModel& model);

/// Rank shadow only: no categorical object is built. The three numbers
/// must agree for every unimodular triangulation of n Delta^r.
struct McKayReport {
  int r = 0;
  std::int64_t n = 1;
  Integer resolution_rank = 0;
  Integer group_order = 0;
  Integer stacky_order = 0;
  bool verdict = false;
  /// Empty when the verdict holds.
  std::string reason;
  static constexpr const char* shadow = "rank";
};

/// DomainError when t does not live in n Delta^r of the model.
McKayReport mckay_check(const QuotientModel& model, const Triangulation& t);

/// Interior lattice points of n Delta^1, the length of the exceptional chain.
std::int64_t exceptional_chain(std::int64_t n);

struct AnModel {
  Fan singular;
  Fan resolution;
  std::int64_t chain = 0;
};

/// The A_{n-1} surface singularity and its minimal resolution.
AnModel an_model(std::int64_t n);

}  // namespace stackyfan
