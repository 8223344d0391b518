#ifndef CUBIC_MW_HPP
#define CUBIC_MW_HPP

#include "cubic_mw/errors.hpp"
#include "cubic_mw/geometry.hpp"
#include "cubic_mw/linalg.hpp"
#include "cubic_mw/surface.hpp"
#include "cubic_mw/enumerate.hpp"
#include "cubic_mw/decompose.hpp"
#include "cubic_mw/plane_cubic.hpp"
#include "cubic_mw/split_surface.hpp"
#include "cubic_mw/relations.hpp"
#include "cubic_mw/version.hpp"

#endif
