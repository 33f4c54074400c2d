#ifndef AGMSTAR_AGMSTAR_HPP
#define AGMSTAR_AGMSTAR_HPP

// Umbrella header: the AGM, the theta series and its inverse, the star
// operation with its three backends, the elliptic/hypergeometric routes,
// and the identity verification suite.

#include "agmstar/agm.hpp"
#include "agmstar/batch.hpp"
#include "agmstar/config.hpp"
#include "agmstar/elliptic.hpp"
#include "agmstar/errors.hpp"
#include "agmstar/hypergeometric.hpp"
#include "agmstar/report.hpp"
#include "agmstar/star.hpp"
#include "agmstar/theta.hpp"
#include "agmstar/verify.hpp"

#endif
