#pragma once

// Color-bleeding metrics for colorized images: pseudo-scribble synthesis,
// Sobel-based edge discrepancy scores, kernel-local PSNR, and the
// superpixel-based Cluster Discrepancy Ratio.

#include "bleedmeter/canny.hpp"
#include "bleedmeter/color.hpp"
#include "bleedmeter/filter.hpp"
#include "bleedmeter/metrics.hpp"
#include "bleedmeter/morphology.hpp"
#include "bleedmeter/png_io.hpp"
#include "bleedmeter/profiles.hpp"
#include "bleedmeter/report.hpp"
#include "bleedmeter/rng.hpp"
#include "bleedmeter/scribble.hpp"
#include "bleedmeter/slic.hpp"
#include "bleedmeter/types.hpp"
