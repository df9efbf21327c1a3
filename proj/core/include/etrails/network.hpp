#pragma once

#include <optional>

#include "etrails/vr.hpp"

namespace etrails {

struct PortRef {
  std::int32_t component = 0;
  std::int32_t label = 0;
  auto operator<=>(const PortRef&) const = default;
};

struct NetComponent {
  VRTable table;
  // Concrete gadget realizing the table; needed only to flatten the network.
  std::optional<MixedMap> realization;
};

// Components with known VR tables plus inter-component wiring. Each component
// label is linked at most once; unlinked labels are exported as network
// externals 0..2D-1.
struct GadgetNetwork {
  std::vector<NetComponent> components;
  std::vector<std::pair<PortRef, PortRef>> links;
  std::vector<PortRef> externals;  // network label -> component port

  void check() const;  // throws MapError on malformed wiring
};

// Sums, over all per-component route-type assignments, the product of the
// component counts, keeping only assignments whose component-level trace
// yields routes on the network externals and no closed cycle through the
// links. Equals count_vr of the flattened map.
VRTable compose_vr(const GadgetNetwork& net, int threads = 1);

// Closed-network variant: keeps assignments tracing to exactly one closed
// cycle; equals count_closed of the flattened map.
BigCount compose_closed(const GadgetNetwork& net, int threads = 1);

// Substitutes every component's realization and turns links into edges.
// Requires every component to carry a realization; kind is Map when all
// realizations are maps.
MixedMap flatten(const GadgetNetwork& net);

// Single-component convenience wrapper.
GadgetNetwork network_of(const MixedMap& gadget, TraceMode mode, int threads = 1);

}  // namespace etrails
