#include "shiftk/solvers/recalc.hpp"

#include "shiftk/solvers/shift_bank.hpp"

namespace shiftk {

RecalcResult recalc(const CoefficientLog& log, std::vector<cplx> new_shifts) {
  if (log.empty()) throw InputError("recalc: the coefficient log is empty");
  if (log.m_left == 0) throw DimensionError("recalc: log has no projection rows");
  ShiftBank bank(new_shifts, log.m_left, log.threshold);
  replay(log, bank);

  RecalcResult res;
  res.shifts = std::move(new_shifts);
  res.m_left = log.m_left;
  res.solutions.assign(bank.solutions().begin(), bank.solutions().end());
  res.residuals.assign(bank.residuals().begin(), bank.residuals().end());
  res.converged = bank.converged();
  res.iterations = log.size();
  return res;
}

}  // namespace shiftk
