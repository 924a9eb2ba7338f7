#pragma once

#include "phasekit/bargmann.hpp"
#include "phasekit/canonical_form.hpp"
#include "phasekit/core_types.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/gauge.hpp"
#include "phasekit/generators.hpp"
#include "phasekit/offdiag.hpp"
#include "phasekit/phase_functionals.hpp"
