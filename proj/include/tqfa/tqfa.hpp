#pragma once

#include "tqfa/error.hpp"
#include "tqfa/semiring.hpp"
#include "tqfa/word.hpp"
#include "tqfa/automaton.hpp"
#include "tqfa/topology.hpp"
#include "tqfa/cobordism.hpp"
#include "tqfa/tqft.hpp"
#include "tqfa/covers.hpp"
#include "tqfa/oracle.hpp"
#include "tqfa/io.hpp"
#include "tqfa/dot.hpp"
