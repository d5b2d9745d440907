#pragma once

#include "fusionkit/perm.hpp"
#include "fusionkit/group.hpp"
#include "fusionkit/group_ops.hpp"
#include "fusionkit/fusion.hpp"
#include "fusionkit/corpus.hpp"
#include "fusionkit/verdicts.hpp"
