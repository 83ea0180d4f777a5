#pragma once

#include "fansq/atlas.hpp"
#include "fansq/errors.hpp"
#include "fansq/fanstate.hpp"
#include "fansq/fock_vector.hpp"
#include "fansq/fockoracle.hpp"
#include "fansq/signed_log.hpp"
#include "fansq/specfun.hpp"
#include "fansq/squeeze.hpp"
