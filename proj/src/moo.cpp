#include "divrank/moo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "divrank/errors.hpp"
#include "divrank/ranking.hpp"
#include "divrank/rng.hpp"

namespace divrank {

Ranking decodeRanking(const Genotype& genotype) {
    Ranking order(genotype.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return genotype[static_cast<std::size_t>(a)] < genotype[static_cast<std::size_t>(b)];
    });
    return order;
}

Genotype encodeRanking(const Ranking& ranking) {
    const int n = static_cast<int>(ranking.size());
    if (!isPermutation(ranking, n)) throw ValidationError("cannot encode: not a permutation");
    Genotype genes(ranking.size());
    for (int p = 0; p < n; ++p)
        genes[static_cast<std::size_t>(ranking[static_cast<std::size_t>(p)])] =
            (static_cast<double>(p) + 0.5) / static_cast<double>(n);
    return genes;
}

namespace {

using ObjectivePair = std::pair<double, double>;

bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
    return a.first <= b.first && a.second <= b.second &&
           (a.first < b.first || a.second < b.second);
}

struct RankingHash {
    std::size_t operator()(const Ranking& r) const {
        std::size_t h = 1469598103934665603ULL;
        for (int v : r) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ULL;
        }
        return h;
    }
};

// Both objectives minimized: f1 = 1 - nDCG_N, f2 = -DivR.
class Evaluator {
public:
    Evaluator(const SimilarityKernel& kernel, const RelevanceVector& rel, int horizon)
        : kernel_(kernel), rel_(rel), horizon_(horizon) {
        const int n = kernel.size();
        gains_.resize(static_cast<std::size_t>(n));
        discounts_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            gains_[static_cast<std::size_t>(i)] = std::exp2(rel[static_cast<std::size_t>(i)]) - 1.0;
            discounts_[static_cast<std::size_t>(i)] =
                1.0 / std::log2(static_cast<double>(i) + 2.0);
        }
        std::vector<double> sorted = gains_;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        idcg_ = 0.0;
        for (int i = 0; i < n; ++i)
            idcg_ += sorted[static_cast<std::size_t>(i)] * discounts_[static_cast<std::size_t>(i)];
    }

    ObjectivePair operator()(const Ranking& ranking) const {
        double dcgValue = 0.0;
        for (std::size_t p = 0; p < ranking.size(); ++p)
            dcgValue += gains_[static_cast<std::size_t>(ranking[p])] * discounts_[p];
        const double ndcgValue = idcg_ == 0.0 ? 1.0 : dcgValue / idcg_;
        return {1.0 - ndcgValue, -rankDiversity(ranking, kernel_, horizon_)};
    }

private:
    const SimilarityKernel& kernel_;
    const RelevanceVector& rel_;
    int horizon_;
    std::vector<double> gains_;
    std::vector<double> discounts_;
    double idcg_ = 0.0;
};

// Memoization keyed by the decoded permutation: many genotypes map to one
// permutation, and each miss costs an O(H^2 N) factorization.
using FitnessCache = std::unordered_map<Ranking, ObjectivePair, RankingHash>;

std::vector<ObjectivePair> evaluateAll(const std::vector<Genotype>& genotypes,
                                       const Evaluator& eval, FitnessCache& cache, int threads) {
    std::vector<Ranking> decoded(genotypes.size());
    for (std::size_t i = 0; i < genotypes.size(); ++i) decoded[i] = decodeRanking(genotypes[i]);

    std::vector<const Ranking*> misses;
    {
        std::unordered_map<Ranking, bool, RankingHash> pending;
        for (const auto& ranking : decoded) {
            if (cache.count(ranking) || pending.count(ranking)) continue;
            pending.emplace(ranking, true);
            misses.push_back(&ranking);
        }
    }

    std::vector<ObjectivePair> results(misses.size());
    const int workers = std::min<int>(threads, static_cast<int>(misses.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < misses.size(); ++i) results[i] = eval(*misses[i]);
    } else {
        // Fitness is pure, so splitting the miss list across threads cannot
        // change any value; all randomness stays on the sequential path.
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = static_cast<std::size_t>(w); i < misses.size();
                     i += static_cast<std::size_t>(workers))
                    results[i] = eval(*misses[i]);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < misses.size(); ++i) cache.emplace(*misses[i], results[i]);

    std::vector<ObjectivePair> out(genotypes.size());
    for (std::size_t i = 0; i < genotypes.size(); ++i) out[i] = cache.at(decoded[i]);
    return out;
}

struct SortedPopulation {
    std::vector<int> rank;
    std::vector<double> crowding;
    std::vector<std::vector<int>> fronts;
};

SortedPopulation fastNonDominatedSort(const std::vector<ObjectivePair>& objs) {
    const int m = static_cast<int>(objs.size());
    SortedPopulation out;
    out.rank.assign(static_cast<std::size_t>(m), 0);
    out.crowding.assign(static_cast<std::size_t>(m), 0.0);

    std::vector<std::vector<int>> dominated(static_cast<std::size_t>(m));
    std::vector<int> dominationCount(static_cast<std::size_t>(m), 0);
    std::vector<int> current;
    for (int p = 0; p < m; ++p) {
        for (int q = p + 1; q < m; ++q) {
            if (dominates(objs[static_cast<std::size_t>(p)], objs[static_cast<std::size_t>(q)])) {
                dominated[static_cast<std::size_t>(p)].push_back(q);
                ++dominationCount[static_cast<std::size_t>(q)];
            } else if (dominates(objs[static_cast<std::size_t>(q)],
                                 objs[static_cast<std::size_t>(p)])) {
                dominated[static_cast<std::size_t>(q)].push_back(p);
                ++dominationCount[static_cast<std::size_t>(p)];
            }
        }
        if (dominationCount[static_cast<std::size_t>(p)] == 0) {
            out.rank[static_cast<std::size_t>(p)] = 0;
            current.push_back(p);
        }
    }
    // dominationCount is only ever decremented after this point, so members
    // of later fronts are discovered exactly once.
    while (!current.empty()) {
        out.fronts.push_back(current);
        std::vector<int> next;
        for (int p : current) {
            for (int q : dominated[static_cast<std::size_t>(p)]) {
                if (--dominationCount[static_cast<std::size_t>(q)] == 0) {
                    out.rank[static_cast<std::size_t>(q)] =
                        out.rank[static_cast<std::size_t>(p)] + 1;
                    next.push_back(q);
                }
            }
        }
        current = std::move(next);
    }

    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& front : out.fronts) {
        if (front.size() <= 2) {
            for (int idx : front) out.crowding[static_cast<std::size_t>(idx)] = inf;
            continue;
        }
        for (int dim = 0; dim < 2; ++dim) {
            auto value = [&](int idx) {
                return dim == 0 ? objs[static_cast<std::size_t>(idx)].first
                                : objs[static_cast<std::size_t>(idx)].second;
            };
            std::vector<int> order = front;
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (value(a) != value(b)) return value(a) < value(b);
                return a < b;
            });
            out.crowding[static_cast<std::size_t>(order.front())] = inf;
            out.crowding[static_cast<std::size_t>(order.back())] = inf;
            const double range = value(order.back()) - value(order.front());
            if (range <= 0.0) continue;
            for (std::size_t i = 1; i + 1 < order.size(); ++i)
                out.crowding[static_cast<std::size_t>(order[i])] +=
                    (value(order[i + 1]) - value(order[i - 1])) / range;
        }
    }
    return out;
}

struct FrontCandidate {
    ObjectivePair objs;
    Ranking ranking;
};

// Non-dominated filter with deduplication on exact objective pairs. Sorting
// by (f1, f2, ranking) first makes the surviving representative of each
// duplicate pair deterministic.
std::vector<FrontCandidate> paretoFilter(std::vector<FrontCandidate> candidates) {
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.objs.first != b.objs.first) return a.objs.first < b.objs.first;
        if (a.objs.second != b.objs.second) return a.objs.second < b.objs.second;
        return a.ranking < b.ranking;
    });
    std::vector<FrontCandidate> kept;
    double bestF2 = std::numeric_limits<double>::infinity();
    for (auto& candidate : candidates) {
        if (candidate.objs.second < bestF2) {
            bestF2 = candidate.objs.second;
            kept.push_back(std::move(candidate));
        }
    }
    return kept;
}

} // namespace

double hypervolume2d(const std::vector<ObjectivePair>& points, double refX, double refY) {
    std::vector<ObjectivePair> inside;
    for (const auto& p : points)
        if (p.first < refX && p.second < refY) inside.push_back(p);
    std::sort(inside.begin(), inside.end());
    // Pareto-minimal staircase: strictly decreasing y along ascending x.
    std::vector<ObjectivePair> frontier;
    double bestY = std::numeric_limits<double>::infinity();
    for (const auto& p : inside) {
        if (p.second < bestY) {
            frontier.push_back(p);
            bestY = p.second;
        }
    }
    // Vertical slabs: between consecutive staircase corners the covered
    // height is refY - y_i.
    double volume = 0.0;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        const double nextX = i + 1 < frontier.size() ? frontier[i + 1].first : refX;
        volume += (nextX - frontier[i].first) * (refY - frontier[i].second);
    }
    return volume;
}

TradeoffFront evolveFront(const SimilarityKernel& kernel, const RelevanceVector& rel,
                          const EvolveConfig& config) {
    const int n = kernel.size();
    if (n < 2) throw ValidationError("evolve needs at least 2 items");
    if (static_cast<int>(rel.size()) != n)
        throw ValidationError("relevance vector does not match kernel size");
    if (config.popSize < 4 || config.popSize % 2 != 0)
        throw ValidationError("population size must be even and >= 4");
    if (config.generations < 1) throw ValidationError("generations must be >= 1");
    if (!(config.pCrossover >= 0.0 && config.pCrossover <= 1.0))
        throw ValidationError("crossover rate must lie in [0, 1]");
    if (!(config.pMutation >= 0.0 && config.pMutation <= 1.0))
        throw ValidationError("mutation rate must lie in [0, 1]");
    if (config.threads < 1) throw ValidationError("thread count must be >= 1");

    const int popSize = config.popSize;
    Rng rng(config.seed);
    const Evaluator eval(kernel, rel, config.horizon);
    FitnessCache cache;

    std::vector<Genotype> population(static_cast<std::size_t>(popSize));
    for (auto& genotype : population) {
        genotype.resize(static_cast<std::size_t>(n));
        for (auto& gene : genotype) gene = rng.uniform();
    }
    // Seed the two single-objective optima so the extremes of the front are
    // present from generation 0.
    population[0] = encodeRanking(greedyDiverseRanking(kernel, &rel));
    population[1] = encodeRanking(qualityRanking(rel));

    std::vector<ObjectivePair> objectives = evaluateAll(population, eval, cache, config.threads);
    SortedPopulation sorted = fastNonDominatedSort(objectives);

    std::vector<FrontCandidate> archive;
    auto archiveUpdate = [&](const std::vector<Genotype>& genotypes,
                             const std::vector<ObjectivePair>& objs) {
        for (std::size_t i = 0; i < genotypes.size(); ++i)
            archive.push_back({objs[i], decodeRanking(genotypes[i])});
        archive = paretoFilter(std::move(archive));
    };
    archiveUpdate(population, objectives);

    std::vector<std::vector<ObjectivePair>> archiveSnapshots;
    auto snapshot = [&] {
        std::vector<ObjectivePair> pairs;
        pairs.reserve(archive.size());
        for (const auto& entry : archive) pairs.push_back(entry.objs);
        archiveSnapshots.push_back(std::move(pairs));
    };
    snapshot();

    auto tournament = [&]() {
        const int a = rng.belowInt(popSize);
        const int b = rng.belowInt(popSize);
        if (sorted.rank[static_cast<std::size_t>(a)] != sorted.rank[static_cast<std::size_t>(b)])
            return sorted.rank[static_cast<std::size_t>(a)] <
                           sorted.rank[static_cast<std::size_t>(b)]
                       ? a
                       : b;
        if (sorted.crowding[static_cast<std::size_t>(a)] !=
            sorted.crowding[static_cast<std::size_t>(b)])
            return sorted.crowding[static_cast<std::size_t>(a)] >
                           sorted.crowding[static_cast<std::size_t>(b)]
                       ? a
                       : b;
        return a; // full tie: first draw wins
    };

    for (int gen = 1; gen <= config.generations; ++gen) {
        std::vector<Genotype> offspring;
        offspring.reserve(static_cast<std::size_t>(popSize));
        for (int pair = 0; pair < popSize / 2; ++pair) {
            Genotype childA = population[static_cast<std::size_t>(tournament())];
            Genotype childB = population[static_cast<std::size_t>(tournament())];
            if (rng.uniform() < config.pCrossover) {
                for (int g = 0; g < n; ++g)
                    if (rng.uniform() < 0.5)
                        std::swap(childA[static_cast<std::size_t>(g)],
                                  childB[static_cast<std::size_t>(g)]);
            }
            for (int g = 0; g < n; ++g)
                if (rng.uniform() < config.pMutation)
                    childA[static_cast<std::size_t>(g)] = rng.uniform();
            for (int g = 0; g < n; ++g)
                if (rng.uniform() < config.pMutation)
                    childB[static_cast<std::size_t>(g)] = rng.uniform();
            offspring.push_back(std::move(childA));
            offspring.push_back(std::move(childB));
        }

        std::vector<ObjectivePair> offspringObjs =
            evaluateAll(offspring, eval, cache, config.threads);
        archiveUpdate(offspring, offspringObjs);
        snapshot();

        // mu + lambda elitist survival on the combined pool.
        std::vector<Genotype> combined = std::move(population);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        std::vector<ObjectivePair> combinedObjs = std::move(objectives);
        combinedObjs.insert(combinedObjs.end(), offspringObjs.begin(), offspringObjs.end());

        const SortedPopulation combinedSort = fastNonDominatedSort(combinedObjs);
        std::vector<int> chosen;
        chosen.reserve(static_cast<std::size_t>(popSize));
        for (const auto& front : combinedSort.fronts) {
            if (static_cast<int>(chosen.size() + front.size()) <= popSize) {
                chosen.insert(chosen.end(), front.begin(), front.end());
                if (static_cast<int>(chosen.size()) == popSize) break;
                continue;
            }
            std::vector<int> truncated = front;
            std::sort(truncated.begin(), truncated.end(), [&](int a, int b) {
                const double ca = combinedSort.crowding[static_cast<std::size_t>(a)];
                const double cb = combinedSort.crowding[static_cast<std::size_t>(b)];
                if (ca != cb) return ca > cb;
                return a < b;
            });
            const std::size_t needed = static_cast<std::size_t>(popSize) - chosen.size();
            chosen.insert(chosen.end(), truncated.begin(),
                          truncated.begin() + static_cast<std::ptrdiff_t>(needed));
            break;
        }

        population.clear();
        objectives.clear();
        sorted.rank.clear();
        sorted.crowding.clear();
        sorted.fronts.clear();
        population.reserve(static_cast<std::size_t>(popSize));
        objectives.reserve(static_cast<std::size_t>(popSize));
        for (int idx : chosen) {
            population.push_back(std::move(combined[static_cast<std::size_t>(idx)]));
            objectives.push_back(combinedObjs[static_cast<std::size_t>(idx)]);
            sorted.rank.push_back(combinedSort.rank[static_cast<std::size_t>(idx)]);
            sorted.crowding.push_back(combinedSort.crowding[static_cast<std::size_t>(idx)]);
        }
    }

    // Final front: the non-dominated set of the last population, or of the
    // accumulated archive when requested.
    std::vector<FrontCandidate> finalists;
    if (config.accumulateArchive) {
        finalists = archive;
    } else {
        finalists.reserve(population.size());
        for (std::size_t i = 0; i < population.size(); ++i)
            finalists.push_back({objectives[i], decodeRanking(population[i])});
        finalists = paretoFilter(std::move(finalists));
    }

    TradeoffFront front;
    front.points.reserve(finalists.size());
    for (auto& candidate : finalists) {
        FrontPoint point;
        point.fQuality = candidate.objs.first;
        point.fDiversity = candidate.objs.second;
        point.ranking = std::move(candidate.ranking);
        front.points.push_back(std::move(point));
    }
    // paretoFilter already yields ascending fQuality order.

    double qMin = 0.0, qMax = 0.0, dMin = 0.0, dMax = 0.0;
    if (!front.points.empty()) {
        qMin = qMax = front.points.front().fQuality;
        dMin = dMax = front.points.front().fDiversity;
        for (const auto& point : front.points) {
            qMin = std::min(qMin, point.fQuality);
            qMax = std::max(qMax, point.fQuality);
            dMin = std::min(dMin, point.fDiversity);
            dMax = std::max(dMax, point.fDiversity);
        }
    }
    auto normalize = [](double value, double lo, double hi) {
        return hi > lo ? (value - lo) / (hi - lo) : 0.0;
    };
    for (auto& point : front.points) {
        point.normQ = normalize(point.fQuality, qMin, qMax);
        point.normD = normalize(point.fDiversity, dMin, dMax);
    }

    front.metadata.seed = config.seed;
    front.metadata.popSize = config.popSize;
    front.metadata.generations = config.generations;
    front.metadata.pCrossover = config.pCrossover;
    front.metadata.pMutation = config.pMutation;
    front.metadata.horizon = config.horizon;
    front.metadata.threads = config.threads;
    front.metadata.accumulateArchive = config.accumulateArchive;
    front.metadata.ids = kernel.sourceIds;
    // Per-generation hypervolume of the running archive, measured in the
    // final normalization frame; the archive only improves, so the series is
    // non-decreasing.
    front.metadata.hypervolume.reserve(archiveSnapshots.size());
    for (const auto& pairs : archiveSnapshots) {
        std::vector<ObjectivePair> normalized;
        normalized.reserve(pairs.size());
        for (const auto& p : pairs)
            normalized.push_back({normalize(p.first, qMin, qMax),
                                  normalize(p.second, dMin, dMax)});
        front.metadata.hypervolume.push_back(hypervolume2d(normalized, 1.1, 1.1));
    }
    return front;
}

const FrontPoint& selectByIndifference(const TradeoffFront& front) {
    if (front.points.empty())
        throw ValidationError("cannot select from an empty trade-off front");
    const FrontPoint* best = &front.points.front();
    double bestRadius = std::numeric_limits<double>::infinity();
    for (const auto& point : front.points) {
        const double radius = std::sqrt(point.normQ * point.normQ + point.normD * point.normD);
        if (radius < bestRadius) { // strict: ties keep the smaller-fQuality point
            bestRadius = radius;
            best = &point;
        }
    }
    return *best;
}

namespace {

using nlohmann::ordered_json;

} // namespace

void saveFrontJson(const TradeoffFront& front, const std::string& path) {
    ordered_json doc;
    ordered_json meta;
    meta["seed"] = front.metadata.seed;
    meta["popSize"] = front.metadata.popSize;
    meta["generations"] = front.metadata.generations;
    meta["pCrossover"] = front.metadata.pCrossover;
    meta["pMutation"] = front.metadata.pMutation;
    meta["horizon"] = front.metadata.horizon;
    meta["threads"] = front.metadata.threads;
    meta["accumulateArchive"] = front.metadata.accumulateArchive;
    meta["ids"] = front.metadata.ids;
    meta["qualities"] = front.metadata.qualities;
    meta["hypervolume"] = front.metadata.hypervolume;
    doc["metadata"] = std::move(meta);

    ordered_json points = ordered_json::array();
    for (const auto& point : front.points) {
        ordered_json entry;
        entry["fQuality"] = point.fQuality;
        entry["fDiversity"] = point.fDiversity;
        entry["normQ"] = point.normQ;
        entry["normD"] = point.normD;
        ordered_json ids = ordered_json::array();
        for (int idx : point.ranking)
            ids.push_back(front.metadata.ids.at(static_cast<std::size_t>(idx)));
        entry["ranking"] = std::move(ids);
        points.push_back(std::move(entry));
    }
    doc["points"] = std::move(points);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

TradeoffFront loadFrontJson(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid front JSON: ") + e.what());
    }
    if (!doc.contains("metadata") || !doc.contains("points"))
        throw ValidationError("front JSON must contain \"metadata\" and \"points\"");

    TradeoffFront front;
    const auto& meta = doc["metadata"];
    front.metadata.seed = meta.value("seed", 0ULL);
    front.metadata.popSize = meta.value("popSize", 0);
    front.metadata.generations = meta.value("generations", 0);
    front.metadata.pCrossover = meta.value("pCrossover", 0.0);
    front.metadata.pMutation = meta.value("pMutation", 0.0);
    front.metadata.horizon = meta.value("horizon", 0);
    front.metadata.threads = meta.value("threads", 1);
    front.metadata.accumulateArchive = meta.value("accumulateArchive", false);
    front.metadata.ids = meta.value("ids", std::vector<std::string>{});
    front.metadata.qualities = meta.value("qualities", std::vector<double>{});
    front.metadata.hypervolume = meta.value("hypervolume", std::vector<double>{});

    std::unordered_map<std::string, int> indexOf;
    for (std::size_t i = 0; i < front.metadata.ids.size(); ++i)
        indexOf[front.metadata.ids[i]] = static_cast<int>(i);

    for (const auto& entry : doc["points"]) {
        FrontPoint point;
        point.fQuality = entry.at("fQuality").get<double>();
        point.fDiversity = entry.at("fDiversity").get<double>();
        point.normQ = entry.at("normQ").get<double>();
        point.normD = entry.at("normD").get<double>();
        for (const auto& id : entry.at("ranking")) {
            auto it = indexOf.find(id.get<std::string>());
            if (it == indexOf.end())
                throw ValidationError("front JSON ranking references unknown id \"" +
                                      id.get<std::string>() + "\"");
            point.ranking.push_back(it->second);
        }
        if (!isPermutation(point.ranking, static_cast<int>(front.metadata.ids.size())))
            throw ValidationError("front JSON point is not a permutation of the id list");
        front.points.push_back(std::move(point));
    }
    return front;
}

} // namespace divrank
