#pragma once

// Umbrella header for the AutoFB biometry library.

#include "autofb/bbox.hpp"
#include "autofb/biometry.hpp"
#include "autofb/ellipse_fit.hpp"
#include "autofb/error_stats.hpp"
#include "autofb/errors.hpp"
#include "autofb/folds.hpp"
#include "autofb/gray_image.hpp"
#include "autofb/mask.hpp"
#include "autofb/metrics.hpp"
#include "autofb/phantom.hpp"
#include "autofb/point.hpp"
#include "autofb/regions.hpp"
#include "autofb/ruler.hpp"
#include "autofb/ruler_glyphs.hpp"
#include "autofb/template_match.hpp"
#include "autofb/version.hpp"
