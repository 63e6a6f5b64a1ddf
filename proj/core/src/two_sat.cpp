#include "m2s/two_sat.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace m2s {

namespace {

// literal code -> node id; +v -> 2(v-1), -v -> 2(v-1)+1
inline int node_of(int code) {
    return code > 0 ? 2 * (code - 1) : 2 * (-code - 1) + 1;
}

// Iterative Tarjan so deep graphs cannot overflow the call stack.
class TarjanScc {
public:
    TarjanScc(int nodes, const std::vector<int>& heads,
              const std::vector<int>& targets)
        : heads_(heads), targets_(targets), index_(nodes, -1), lowlink_(nodes, 0),
          component_(nodes, -1), on_stack_(nodes, 0) {}

    void run() {
        const int nodes = static_cast<int>(index_.size());
        for (int v = 0; v < nodes; ++v)
            if (index_[v] < 0) visit(v);
    }

    int component(int v) const { return component_[v]; }

private:
    struct Frame {
        int node;
        int edge;
    };

    void visit(int root) {
        frames_.push_back({root, heads_[root]});
        open(root);
        while (!frames_.empty()) {
            Frame& frame = frames_.back();
            const int v = frame.node;
            if (frame.edge < heads_[v + 1]) {
                const int w = targets_[frame.edge++];
                if (index_[w] < 0) {
                    frames_.push_back({w, heads_[w]});
                    open(w);
                } else if (on_stack_[w]) {
                    lowlink_[v] = std::min(lowlink_[v], index_[w]);
                }
                continue;
            }
            frames_.pop_back();
            if (!frames_.empty())
                lowlink_[frames_.back().node] =
                    std::min(lowlink_[frames_.back().node], lowlink_[v]);
            if (lowlink_[v] == index_[v]) {
                for (;;) {
                    const int w = stack_.back();
                    stack_.pop_back();
                    on_stack_[w] = 0;
                    component_[w] = component_count_;
                    if (w == v) break;
                }
                ++component_count_;
            }
        }
    }

    void open(int v) {
        index_[v] = lowlink_[v] = next_index_++;
        stack_.push_back(v);
        on_stack_[v] = 1;
    }

    const std::vector<int>& heads_;
    const std::vector<int>& targets_;
    std::vector<int> index_;
    std::vector<int> lowlink_;
    std::vector<int> component_;
    std::vector<std::uint8_t> on_stack_;
    std::vector<int> stack_;
    std::vector<Frame> frames_;
    int next_index_ = 0;
    int component_count_ = 0;
};

}  // namespace

bool two_sat_satisfiable(const Instance& inst) {
    const int nodes = 2 * inst.n;
    std::vector<int> degree(nodes + 1, 0);
    for (const Clause& c : inst.clauses) {
        ++degree[node_of(-c.first.code)];
        ++degree[node_of(-c.second.code)];
    }
    std::vector<int> heads(nodes + 1, 0);
    for (int v = 0; v < nodes; ++v) heads[v + 1] = heads[v] + degree[v];
    std::vector<int> targets(static_cast<std::size_t>(heads[nodes]));
    std::vector<int> cursor(heads.begin(), heads.end() - 1);
    for (const Clause& c : inst.clauses) {
        targets[static_cast<std::size_t>(cursor[node_of(-c.first.code)]++)] =
            node_of(c.second.code);
        targets[static_cast<std::size_t>(cursor[node_of(-c.second.code)]++)] =
            node_of(c.first.code);
    }

    TarjanScc scc(nodes, heads, targets);
    scc.run();
    for (int v = 0; v < inst.n; ++v)
        if (scc.component(2 * v) == scc.component(2 * v + 1)) return false;
    return true;
}

}  // namespace m2s
