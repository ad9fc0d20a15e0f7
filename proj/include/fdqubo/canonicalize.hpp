#pragma once

#include "fdqubo/model.hpp"

namespace fdqubo {

/// Replaces `var` by `var' + m` with m = min D(var), so D(var') starts at 0.
/// Each product using `var` as a factor moves to a fresh result over `var'`
/// and the old result is tied to it by a linear equation:
///   y = var * w  ->  y - y' - m*w = 0,            y' = var' * w
///   y = var^2    ->  y - y' - 2m*var' - m^2 = 0,  y' = var'^2
/// Throws std::invalid_argument if `var` is a product result, already starts
/// at 0, or the model is not at stage no-inequalities.
QipModel shift_variable(const QipModel& model, VarId var);

/// Shifts until every live domain starts at 0. Factors go first (lowest id
/// first); a product result that is off zero once its factors are canonical
/// is detached from its product and shifted like any linear variable.
QipModel canonicalize_all(const QipModel& model);

}  // namespace fdqubo
