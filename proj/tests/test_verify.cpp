#include <catch2/catch_amalgamated.hpp>

#include "irrlat/irrlat.hpp"

