#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "autofb/errors.hpp"

namespace autofb {

struct SubjectEntry {
    std::string subject_id;
    int image_count = 0;
};

// Subject-disjoint fold split: every image of a subject lands in the
// same fold by construction.
struct FoldAssignment {
    int k = 0;
    std::map<std::string, int> mapping;  // subject id -> fold index
    std::vector<int> fold_image_counts;
    std::vector<int> fold_subject_counts;
};

// Greedy largest-first balancing: subjects are sorted by image count
// descending (ties broken by a seed-shuffled order) and each is placed
// into the currently smallest fold. Deterministic for a fixed seed.
inline FoldAssignment assign_folds(std::vector<SubjectEntry> manifest, int k,
                                   std::uint64_t seed) {
    if (static_cast<int>(manifest.size()) < k)
        throw TooFewSubjects("assign_folds: " + std::to_string(manifest.size()) +
                             " subject(s) for k=" + std::to_string(k));

    std::mt19937_64 rng(seed);
    std::shuffle(manifest.begin(), manifest.end(), rng);
    std::stable_sort(manifest.begin(), manifest.end(),
                     [](const SubjectEntry& a, const SubjectEntry& b) {
                         return a.image_count > b.image_count;
                     });

    FoldAssignment out;
    out.k = k;
    out.fold_image_counts.assign(k, 0);
    out.fold_subject_counts.assign(k, 0);
    for (const SubjectEntry& s : manifest) {
        int target = 0;
        for (int f = 1; f < k; ++f)
            if (out.fold_image_counts[f] < out.fold_image_counts[target]) target = f;
        out.mapping[s.subject_id] = target;
        out.fold_image_counts[target] += s.image_count;
        out.fold_subject_counts[target] += 1;
    }
    return out;
}

}  // namespace autofb
