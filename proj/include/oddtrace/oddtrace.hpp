#pragma once

#include <oddtrace/rational.hpp>
#include <oddtrace/qseries.hpp>
#include <oddtrace/superalgebras.hpp>
#include <oddtrace/pbw_traces.hpp>
#include <oddtrace/characters.hpp>
#include <oddtrace/zhu_queer.hpp>
#include <oddtrace/modcheck.hpp>
#include <oddtrace/json_io.hpp>
