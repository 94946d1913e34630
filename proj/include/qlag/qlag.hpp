#pragma once

#include "rat.hpp"
#include "mono.hpp"
#include "lincomb.hpp"
#include "poly.hpp"
#include "linalg.hpp"
#include "weyl.hpp"
#include "parse.hpp"
#include "cochain.hpp"
#include "reference.hpp"
#include "bar.hpp"
#include "quantize.hpp"
#include "koszul_bv.hpp"
#include "report.hpp"
#include "suites.hpp"
