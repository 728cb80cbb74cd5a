#pragma once

#include "api.hpp"
