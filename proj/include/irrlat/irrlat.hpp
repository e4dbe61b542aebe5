#pragma once

#include "irrlat/charalg.hpp"
#include "irrlat/rootdata.hpp"
#include "irrlat/twistlang.hpp"
#include "irrlat/catalog.hpp"
#include "irrlat/restriction.hpp"
#include "irrlat/diagonal.hpp"
#include "irrlat/lattice.hpp"
#include "irrlat/verify.hpp"
