#ifndef CYCLIDE_CYCLIDE_HPP
#define CYCLIDE_CYCLIDE_HPP

#include "cyclide/error.hpp"
#include "cyclide/geometry.hpp"
#include "cyclide/hypergeom.hpp"
#include "cyclide/iso.hpp"
#include "cyclide/parallel.hpp"
#include "cyclide/quadrature.hpp"
#include "cyclide/series_poly.hpp"
#include "cyclide/verify.hpp"

#endif  // CYCLIDE_CYCLIDE_HPP
