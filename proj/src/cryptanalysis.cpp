#include "qnsc/cryptanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace qnsc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<Observation> observed_keystream_bits(const Transcript& transcript,
                                                 const std::vector<std::uint8_t>& known_plaintext,
                                                 std::size_t offset, unsigned M) {
    const unsigned chunk = bits_per_symbol(M);
    if (offset + known_plaintext.size() > transcript.size()) {
        throw std::domain_error("known plaintext is misaligned with the transcript");
    }
    std::vector<Observation> out;
    out.reserve(known_plaintext.size());
    for (std::size_t j = 0; j < known_plaintext.size(); ++j) {
        const std::size_t i = offset + j;
        Observation ob;
        ob.position = static_cast<std::uint64_t>(i) * chunk + (chunk - 1);
        ob.bit = static_cast<std::uint8_t>((known_plaintext[j] ^ transcript.eve[i]) & 1);
        out.push_back(ob);
    }
    return out;
}

std::uint64_t seed_functional(std::uint64_t position, const TapSet& taps) {
    // cell[i] holds cell i+1's dependence mask on the seed bits
    const unsigned k = taps.degree;
    std::vector<std::uint64_t> cell(k);
    for (unsigned i = 0; i < k; ++i) cell[i] = 1ull << i;
    for (std::uint64_t step = 0;; ++step) {
        std::uint64_t out = 0;
        for (unsigned i = 0; i < k; ++i) {
            if (taps.mask & (1ull << i)) out ^= cell[i];
        }
        if (step == position) return out;
        for (unsigned i = k; i-- > 1;) cell[i] = cell[i - 1];
        cell[0] = out;
    }
}

namespace {

// Functionals for all requested positions in one symbolic sweep.
std::vector<std::uint64_t> functionals_at(const std::vector<std::uint64_t>& sorted_positions,
                                          const TapSet& taps) {
    const unsigned k = taps.degree;
    std::vector<std::uint64_t> cell(k);
    for (unsigned i = 0; i < k; ++i) cell[i] = 1ull << i;
    std::vector<std::uint64_t> result(sorted_positions.size());
    std::size_t next = 0;
    for (std::uint64_t step = 0; next < sorted_positions.size(); ++step) {
        std::uint64_t out = 0;
        for (unsigned i = 0; i < k; ++i) {
            if (taps.mask & (1ull << i)) out ^= cell[i];
        }
        while (next < sorted_positions.size() && sorted_positions[next] == step) {
            result[next++] = out;
        }
        for (unsigned i = k; i-- > 1;) cell[i] = cell[i - 1];
        cell[0] = out;
    }
    return result;
}

} // namespace

LinearSystem build_system(const std::vector<Observation>& observations, const TapSet& taps,
                          bool majority_vote) {
    std::vector<std::uint64_t> positions(observations.size());
    for (std::size_t i = 0; i < observations.size(); ++i) positions[i] = observations[i].position;
    std::vector<std::uint64_t> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const std::vector<std::uint64_t> rows_at = functionals_at(sorted, taps);

    auto row_for = [&](std::uint64_t pos) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), pos);
        return rows_at[static_cast<std::size_t>(it - sorted.begin())];
    };

    LinearSystem sys;
    sys.taps = taps;
    if (!majority_vote) {
        sys.rows.reserve(observations.size());
        for (const Observation& ob : observations) {
            sys.rows.push_back(row_for(ob.position));
            sys.rhs.push_back(ob.bit & 1);
            sys.positions.push_back(ob.position);
        }
        return sys;
    }

    // votes per distinct functional: {zeros, ones, first position seen}
    std::map<std::uint64_t, std::array<std::uint64_t, 3>> votes;
    for (const Observation& ob : observations) {
        auto [it, inserted] = votes.try_emplace(row_for(ob.position),
                                                std::array<std::uint64_t, 3>{0, 0, ob.position});
        ++(*it).second[(ob.bit & 1) ? 1 : 0];
    }
    for (const auto& [row, tally] : votes) {
        if (tally[0] == tally[1]) continue; // tied group carries no verdict
        sys.rows.push_back(row);
        sys.rhs.push_back(tally[1] > tally[0] ? 1 : 0);
        sys.positions.push_back(tally[2]);
    }
    return sys;
}

SeedKey RecoveredKey::seed() const {
    if (!unique) {
        throw std::domain_error("seed key is not uniquely determined");
    }
    return SeedKey(seed_bits, taps);
}

InconsistentSystemError::InconsistentSystemError(std::size_t row_index, std::uint64_t position)
    : std::runtime_error("inconsistent observations: row " + std::to_string(row_index) +
                         " (keystream position " + std::to_string(position) + ")"),
      row_index_(row_index),
      position_(position) {}

RecoveredKey solve_seed(const LinearSystem& system) {
    if (system.size() == 0) {
        throw std::domain_error("linear system has no rows");
    }
    const unsigned k = system.taps.degree;
    std::vector<std::uint64_t> rows = system.rows;
    std::vector<std::uint8_t> rhs = system.rhs;
    std::vector<std::size_t> origin(rows.size());
    std::iota(origin.begin(), origin.end(), 0);

    const std::size_t n = rows.size();
    unsigned rank = 0;
    std::vector<unsigned> pivot_col;
    pivot_col.reserve(k);
    for (unsigned col = 0; col < k && rank < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = rank; r < n; ++r) {
            if ((rows[r] >> col) & 1u) {
                pivot = r;
                break;
            }
        }
        if (pivot == n) continue;
        std::swap(rows[pivot], rows[rank]);
        std::swap(rhs[pivot], rhs[rank]);
        std::swap(origin[pivot], origin[rank]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != rank && ((rows[r] >> col) & 1u)) {
                rows[r] ^= rows[rank];
                rhs[r] ^= rhs[rank];
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }

    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r] == 0 && rhs[r] != 0) {
            throw InconsistentSystemError(origin[r], system.positions[origin[r]]);
        }
    }

    RecoveredKey key;
    key.taps = system.taps;
    key.rank = rank;
    key.unique = (rank == k);
    if (key.unique) {
        // reduced echelon form: row r is the unit vector of pivot_col[r]
        std::uint64_t seed = 0;
        for (unsigned r = 0; r < rank; ++r) {
            if (rhs[r]) seed |= 1ull << pivot_col[r];
        }
        key.seed_bits = seed;
    }
    return key;
}

Decryption decrypt_with_seed(const Transcript& transcript, const RecoveredKey& recovered,
                             unsigned M) {
    Keystream stream(recovered.seed());
    Decryption out;
    out.bits.reserve(transcript.size());
    out.confidence.reserve(transcript.size());
    for (std::size_t i = 0; i < transcript.size(); ++i) {
        const BasisIndex bi = next_basis_index(stream, M);
        out.bits.push_back(static_cast<std::uint8_t>(transcript.eve[i] ^ basis_parity(bi.l)));
        if (transcript.uninformative[i]) {
            out.confidence.push_back(0.0);
        } else {
            const double t = transcript.angle_est[i];
            const double margin =
                std::min(angular_distance(t, 0.0), angular_distance(t, kPi / 2));
            out.confidence.push_back(margin / (kPi / 4));
        }
    }
    return out;
}

} // namespace qnsc
