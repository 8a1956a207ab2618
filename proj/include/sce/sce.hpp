#pragma once

#include "sce/diode1d.hpp"
#include "sce/fn_emission.hpp"
#include "sce/lattice.hpp"
#include "sce/oracle.hpp"
#include "sce/saturn.hpp"
#include "sce/table.hpp"
#include "sce/units.hpp"
