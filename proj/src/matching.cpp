#include "sumset/matching.hpp"

namespace sumset {

namespace {

class Augmenter {
public:
    Augmenter(const std::vector<std::vector<std::size_t>>& adjacency, std::size_t right_count)
        : adjacency_(adjacency), right_owner_(right_count), visited_(right_count, false) {}

    bool augment_from(std::size_t u) {
        visited_.assign(visited_.size(), false);
        return try_path(u);
    }

    std::vector<std::optional<std::size_t>> assignment() const {
        std::vector<std::optional<std::size_t>> left(adjacency_.size());
        for (std::size_t v = 0; v < right_owner_.size(); ++v) {
            if (right_owner_[v]) left[*right_owner_[v]] = v;
        }
        return left;
    }

private:
    bool try_path(std::size_t u) {
        for (std::size_t v : adjacency_[u]) {
            if (visited_[v]) continue;
            visited_[v] = true;
            if (!right_owner_[v] || try_path(*right_owner_[v])) {
                right_owner_[v] = u;
                return true;
            }
        }
        return false;
    }

    const std::vector<std::vector<std::size_t>>& adjacency_;
    std::vector<std::optional<std::size_t>> right_owner_;
    std::vector<bool> visited_;
};

}  // namespace

std::vector<std::optional<std::size_t>> maximum_matching(const std::vector<std::vector<std::size_t>>& adjacency,
                                                         std::size_t right_count) {
    Augmenter augmenter(adjacency, right_count);
    for (std::size_t u = 0; u < adjacency.size(); ++u) augmenter.augment_from(u);
    return augmenter.assignment();
}

}  // namespace sumset
