#pragma once

#include "dmod/error.hpp"
#include "dmod/field.hpp"
#include "dmod/upoly.hpp"
#include "dmod/apoly.hpp"
#include "dmod/series.hpp"
#include "dmod/generators.hpp"
#include "dmod/graded.hpp"
#include "dmod/modp.hpp"
#include "dmod/json.hpp"
#include "dmod/parse.hpp"
#include "dmod/verify.hpp"
