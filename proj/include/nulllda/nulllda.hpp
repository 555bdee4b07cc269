#pragma once

#include "nulllda/certificate.hpp"
#include "nulllda/dataset.hpp"
#include "nulllda/fit.hpp"
#include "nulllda/numerics.hpp"
#include "nulllda/oracle.hpp"
#include "nulllda/projector.hpp"
#include "nulllda/scatter.hpp"
#include "nulllda/total_scatter.hpp"
#include "nulllda/types.hpp"
