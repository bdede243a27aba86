#pragma once

#include "quadrep/arith.hpp"
#include "quadrep/classify.hpp"
#include "quadrep/count.hpp"
#include "quadrep/errors.hpp"
#include "quadrep/rings.hpp"
