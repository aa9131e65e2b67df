#ifndef PRIO_PRIO_HPP
#define PRIO_PRIO_HPP

#include "common.hpp"
#include "constraint.hpp"
#include "contact.hpp"
#include "coverage.hpp"
#include "fairness.hpp"
#include "filter.hpp"
#include "flow.hpp"
#include "generate.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "lp.hpp"
#include "oracle.hpp"
#include "pathpack.hpp"
#include "solution.hpp"
#include "solve.hpp"

#endif
