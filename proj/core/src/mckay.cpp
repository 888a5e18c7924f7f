#include "stackyfan/mckay.hpp"

#include "stackyfan/error.hpp"

namespace stackyfan {

Integer group_order(const QuotientModel& model) {
  if (model.r < 0 || model.n < 1) throw DomainError("quotient model needs r >= 0 and n >= 1");
  return power(Integer(model.n), static_cast<unsigned>(model.r));
}

IntMatrix model_lattice_map(const QuotientModel& model) {
  const Fan orthant = orthant_fan(model.r, model.n);
  const BasisLattice basis = to_basis(Lattice{orthant.lattice});
  return *coordinates_in(IntMatrix::from_rows(orthant.rays), basis);
}

McKayReport mckay_check(const QuotientModel& model, const Triangulation& t) {
  if (t.r != model.r || t.n != model.n)
    throw DomainError("triangulation lives in " + std::to_string(t.n) + " Delta^" + std::to_string(t.r) +
                      ", not in the model's simplex");
  McKayReport report{model.r, model.n, Integer(t.cells.size()), group_order(model), 0, false, {}};
  report.stacky_order = stacky_group_invariants(model_lattice_map(model)).order;
  const auto validity = validate(t);
  if (!validity.valid()) {
    report.reason = "invalid triangulation: " + to_string(validity.violations.front().kind);
  } else if (!is_unimodular(t, validity)) {
    report.reason = "not unimodular";
  } else if (report.resolution_rank != report.group_order || report.group_order != report.stacky_order) {
    report.reason = "rank mismatch";
  } else {
    report.verdict = true;
  }
  return report;
}

std::int64_t exceptional_chain(std::int64_t n) {
  if (n < 1) throw DomainError("exceptional_chain needs n >= 1");
  return static_cast<std::int64_t>(interior_points({1, n}).size());
}

AnModel an_model(std::int64_t n) {
  if (n < 1) throw DomainError("an_model needs n >= 1");
  Triangulation unique{1, n, {}};
  for (std::int64_t i = 0; i < n; ++i) unique.cells.push_back({static_cast<int>(i), static_cast<int>(i + 1)});
  return {orthant_fan(1, n), cone_over_triangulation(unique), exceptional_chain(n)};
}

}  // namespace stackyfan
