// ============================================================================
// models.hpp — Bundled example models
// ============================================================================
//
// The coffee machines follow the narrative description (choice, coin within
// 6 time units, serving deadline); the university triple and the scheduler
// node carry our own documented timing constants, chosen so every analysis
// in the benchmark suite is well-defined. Model text is embedded so the
// tool and the tests need no data files; `robusta models export` writes the
// files out.
//
// ============================================================================

#ifndef ROBUSTA_MODELS_HPP
#define ROBUSTA_MODELS_HPP

#include "robusta/parser.hpp"

#include <string>
#include <vector>

namespace robusta {

struct BundledModel {
    std::string name;    // registry key and file stem
    std::string text;    // model file content
};

/// All bundled model files, stable order.
const std::vector<BundledModel>& bundled_models();

/// Text of one bundled model by name. Throws ModelError when unknown.
const std::string& bundled_model_text(const std::string& name);

/// Parse a bundled model file.
ModelFile load_bundled(const std::string& name);

/// Scheduler ring with N nodes (open node when N = 1).
std::string milner_model_text(int nodes);

}  // namespace robusta

#endif  // ROBUSTA_MODELS_HPP
