#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "casevo/agent/profile.hpp"
#include "casevo/election/typology.hpp"

namespace casevo {

class LlmGateway;
class ExecutionPool;

// Profiles in typology order: agent_0.. take the first category's slots,
// and so on. Names, ages, backgrounds and topics come from seeded templates.
// When `llm` talks to a real model (http) and has a "profile" template, each
// background/topics pair is elaborated by the model (parallel over `pool`),
// keeping the deterministic one when elaboration fails.
// Throws TypologyError.
std::vector<AgentProfile> generate_profiles(const std::vector<TypologyEntry>& typology, std::size_t num_agents,
                                            std::uint64_t seed, LlmGateway* llm = nullptr,
                                            ExecutionPool* pool = nullptr);

}  // namespace casevo
