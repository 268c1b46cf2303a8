#include "radoforge/tournament.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace radoforge {

Tournament::Tournament(int m) : m_(m), out_(m, m), in_(m, m) {
    if (m < 1) throw std::invalid_argument("tournament needs at least one vertex");
}

void Tournament::set_orient(int i, int j, bool i_to_j) {
    if (i == j) throw std::invalid_argument("tournaments have no self-loops");
    out_.set(i, j, i_to_j);
    out_.set(j, i, !i_to_j);
    in_.set(j, i, i_to_j);
    in_.set(i, j, !i_to_j);
}

Tournament random_tournament(int m, Prng rng) {
    Tournament t(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) t.set_orient(i, j, rng.next_bit());
    return t;
}

bool verify_tournament_domination(const Tournament& t, int k, std::uint64_t budget) {
    const int m = t.size();
    if (k < 1 || k > m) throw std::invalid_argument("domination needs 1 <= k <= m");
    const long double work = binomial_ld(m, k) * m;
    if (work > static_cast<long double>(budget)) throw BudgetExceededError(work, budget);

    const int words = t.row_words();
    std::vector<std::uint64_t> dominators(static_cast<std::size_t>(words));
    std::vector<int> s = first_ksubset(k);
    do {
        const auto first = t.in_neighbors(s[0]);
        dominators.assign(first.begin(), first.end());
        for (int i = 1; i < k; ++i) {
            const auto row = t.in_neighbors(s[static_cast<std::size_t>(i)]);
            for (int w = 0; w < words; ++w) dominators[static_cast<std::size_t>(w)] &= row[static_cast<std::size_t>(w)];
        }
        bool any = false;
        for (std::uint64_t w : dominators) any = any || (w != 0);
        if (!any) return false;
    } while (next_ksubset(s, m));
    return true;
}

Tournament find_dominating_tournament(int k, Prng rng, int max_tries, std::uint64_t budget) {
    if (k < 1 || k > 4) throw std::invalid_argument("find_dominating_tournament supports 1 <= k <= 4");
    const int m = 1 << (3 * k);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        Tournament t = random_tournament(m, rng.split(static_cast<std::uint64_t>(attempt)));
        if (verify_tournament_domination(t, k, budget)) return t;
    }
    throw ConstructionFailureError("no dominating tournament found in " + std::to_string(max_tries) +
                                   " tries (k=" + std::to_string(k) + ")");
}

} // namespace radoforge
