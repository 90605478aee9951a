#pragma once

#include "otlab/errors.hpp"
#include "otlab/numeric.hpp"
#include "otlab/polynomial.hpp"
#include "otlab/roots.hpp"
#include "otlab/modp.hpp"
#include "otlab/units.hpp"
#include "otlab/degree12.hpp"
#include "otlab/relations.hpp"
#include "otlab/invariants.hpp"
#include "otlab/linalg.hpp"
#include "otlab/dcomplex.hpp"
#include "otlab/zigzag.hpp"
#include "otlab/fixture_io.hpp"
#include "otlab/otcomplex.hpp"
#include "otlab/datum.hpp"
#include "otlab/report.hpp"
#include "otlab/search.hpp"
