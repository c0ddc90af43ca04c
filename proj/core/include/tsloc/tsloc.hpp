#pragma once

#include "tsloc/builder.hpp"
#include "tsloc/config.hpp"
#include "tsloc/dataset.hpp"
#include "tsloc/dataset_io.hpp"
#include "tsloc/errors.hpp"
#include "tsloc/fingerprint.hpp"
#include "tsloc/generators.hpp"
#include "tsloc/metrics.hpp"
#include "tsloc/npy.hpp"
#include "tsloc/random.hpp"
#include "tsloc/tensor.hpp"
