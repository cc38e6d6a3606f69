#pragma once

#include <string>

#include "cswire/classify.hpp"
#include "cswire/download.hpp"
#include "cswire/measurement.hpp"

namespace cswire {

// MPS file format (JSON): {"d": int, "n": int, "kraus": [d x [4 x [re, im]]]
// (row-major 2x2), "left": [2 x [re, im]], "right": [2 x [re, im]],
// "label": optional string}. Doubles are emitted round-trip exact.
std::string chain_to_json(const MpsChain& chain);
MpsChain chain_from_json(const std::string& text);
MpsChain load_mps_file(const std::string& path);

// Program file format (JSON): ordered list of {"site": int,
// "basis": [d x [d x [re, im]]]} entries (rows are the basis vectors).
std::string program_to_json(const Program& program);
Program program_from_json(const std::string& text);
Program load_program_file(const std::string& path);

// One trace record per JSONL line; the final line carries the closing
// correlation-space state.
std::string trace_to_jsonl(const Trace& trace, int shot);

std::string classification_to_json(const ClassificationResult& result);
std::string download_trace_to_json(const DownloadTrace& trace);

// "%.17g" (used by the CSV and text reports).
std::string fmt17(double v);

}  // namespace cswire
