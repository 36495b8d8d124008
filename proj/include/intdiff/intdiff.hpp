#pragma once

#include "intdiff/coeff.hpp"
#include "intdiff/terms.hpp"
#include "intdiff/order.hpp"
#include "intdiff/poly.hpp"
#include "intdiff/context.hpp"
#include "intdiff/rb_engine.hpp"
#include "intdiff/leading.hpp"
#include "intdiff/enumerate.hpp"
#include "intdiff/gs.hpp"
#include "intdiff/syntax.hpp"
#include "intdiff/verify.hpp"
