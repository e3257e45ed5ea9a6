#pragma once

#include "hms/bundle.hpp"
#include "hms/compact.hpp"
#include "hms/floer.hpp"
#include "hms/lagrangian.hpp"
#include "hms/lattice.hpp"
#include "hms/modular.hpp"
#include "hms/products.hpp"
#include "hms/rational.hpp"
#include "hms/report.hpp"
#include "hms/sections.hpp"
#include "hms/surface.hpp"
#include "hms/theta.hpp"
#include "hms/verify.hpp"
