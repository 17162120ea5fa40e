#pragma once

#include "eogden/emd.hpp"
#include "eogden/error.hpp"
#include "eogden/fir.hpp"
#include "eogden/fmh.hpp"
#include "eogden/io.hpp"
#include "eogden/pipeline.hpp"
#include "eogden/report.hpp"
#include "eogden/signal.hpp"
#include "eogden/snr.hpp"
#include "eogden/spline.hpp"
#include "eogden/swt.hpp"
#include "eogden/synth.hpp"
#include "eogden/wavelets.hpp"
