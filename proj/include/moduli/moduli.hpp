#ifndef MODULI_MODULI_HPP
#define MODULI_MODULI_HPP

#include "moduli/bounds.hpp"
#include "moduli/errors.hpp"
#include "moduli/family.hpp"
#include "moduli/graph.hpp"
#include "moduli/json_io.hpp"
#include "moduli/line_chambers.hpp"
#include "moduli/mv_euler.hpp"
#include "moduli/poincare.hpp"
#include "moduli/quad_index.hpp"
#include "moduli/realize.hpp"
#include "moduli/series.hpp"
#include "moduli/verify.hpp"

#endif // MODULI_MODULI_HPP
