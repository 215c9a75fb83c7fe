#ifndef sbk_superbubble_types_hpp
#define sbk_superbubble_types_hpp

#include <tuple>
#include <vector>

#include "sbk/graph.hpp"

namespace sbk {

struct Superbubble {
    VertexId entrance = 0;
    VertexId exit = 0;
    std::vector<VertexId> interior;  // sorted ascending, excludes entrance and exit

    std::size_t size() const { return interior.size() + 2; }

    friend bool operator==(const Superbubble& a, const Superbubble& b) {
        return a.entrance == b.entrance && a.exit == b.exit && a.interior == b.interior;
    }
    friend bool operator<(const Superbubble& a, const Superbubble& b) {
        return std::tie(a.entrance, a.exit, a.interior) < std::tie(b.entrance, b.exit, b.interior);
    }
};

}

#endif
