#pragma once

#include "char_poly.hpp"
#include "constructions.hpp"
#include "enumerate.hpp"
#include "export.hpp"
#include "fixtures.hpp"
#include "isomorphism.hpp"
#include "polyhedral_map.hpp"
#include "report.hpp"
#include "semmap_io.hpp"
#include "systole.hpp"
