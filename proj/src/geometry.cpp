#include "fractal/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "fractal/error.hpp"
#include "compensated.hpp"
#include "parallel.hpp"

namespace fractal::geometry {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

double point_distance(std::span<const double> x, const std::vector<Point>& pts) {
    double best = INFINITY;
    for (const auto& p : pts) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
        best = std::min(best, s);
    }
    return std::sqrt(best);
}

double cantor_distance(double x, const CantorLike& c) {
    if (x <= 0.0) return -x;
    if (x >= c.scale) return x - c.scale;
    double lo = 0.0;
    double len = c.scale;
    const double floor_len = c.scale * 1e-18;
    while (len > floor_len) {
        double gl = lo + c.ratio * len;
        double gh = lo + (1.0 - c.ratio) * len;
        if (x > gl && x < gh) return std::min(x - gl, gh - x);
        if (x > gl) lo = gh;
        len *= c.ratio;
    }
    return 0.0;
}

// Gaps are laid out from the right end a_1 = total towards the accumulation
// point 0, in the order l_1, l_2, ...
double string_distance(double x, const FractalStringBoundary& s, double total) {
    if (x <= 0.0) return -x;
    if (x >= total) return x - total;
    double y = total - x;
    double cum = 0.0;
    auto in_block = [&](double len, double count, double& d) {
        double width = len * count;
        if (y < cum + width) {
            double off = y - cum;
            double j = std::floor(off / len);
            off -= j * len;
            d = std::min(off, len - off);
            return true;
        }
        cum += width;
        return false;
    };
    double d = 0.0;
    if (s.generator) {
        const auto& g = *s.generator;
        double len = g.first;
        double count = 1.0;
        while (len > total * 1e-18) {
            if (in_block(len, count, d)) return std::max(d, 0.0);
            len *= g.ratio;
            count *= g.multiplicity;
        }
        return 0.0;
    }
    for (double len : s.lengths) {
        if (in_block(len, 1.0, d)) return std::max(d, 0.0);
    }
    return 0.0;
}

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    double vx = bx - ax, vy = by - ay;
    double u = ((px - ax) * vx + (py - ay) * vy) / (vx * vx + vy * vy);
    u = std::clamp(u, 0.0, 1.0);
    double dx = px - (ax + u * vx), dy = py - (ay + u * vy);
    return std::hypot(dx, dy);
}

double gasket_distance(double x, double y) {
    std::array<double, 3> lam{};
    lam[2] = 2.0 * y / kSqrt3;
    lam[1] = x - 0.5 * lam[2];
    lam[0] = 1.0 - lam[1] - lam[2];
    if (lam[0] < 0.0 || lam[1] < 0.0 || lam[2] < 0.0) {
        return std::min({segment_distance(x, y, 0.0, 0.0, 1.0, 0.0), segment_distance(x, y, 1.0, 0.0, 0.5, kSqrt3 / 2.0),
                         segment_distance(x, y, 0.5, kSqrt3 / 2.0, 0.0, 0.0)});
    }
    double height = kSqrt3 / 2.0;
    for (int depth = 0; depth < 62; ++depth) {
        int corner = -1;
        for (int i = 0; i < 3; ++i) {
            if (lam[i] >= 0.5) corner = i;
        }
        if (corner < 0) {
            // Open middle hole: distance to its boundary along the nearest edge normal.
            return height * std::min({0.5 - lam[0], 0.5 - lam[1], 0.5 - lam[2]});
        }
        for (int i = 0; i < 3; ++i) lam[i] = (i == corner) ? 2.0 * lam[i] - 1.0 : 2.0 * lam[i];
        height *= 0.5;
    }
    return 0.0;
}

double carpet_distance(std::span<const double> x) {
    double outside = 0.0;
    bool inside = true;
    for (int i = 0; i < 3; ++i) {
        double e = std::max({0.0, -x[i], x[i] - 1.0});
        if (e > 0.0) inside = false;
        outside += e * e;
    }
    if (!inside) return std::sqrt(outside);
    std::array<double, 3> u{x[0], x[1], x[2]};
    double side = 1.0;
    for (int depth = 0; depth < 40; ++depth) {
        std::array<int, 3> digit{};
        bool middle = true;
        for (int i = 0; i < 3; ++i) {
            digit[i] = std::clamp(static_cast<int>(std::floor(3.0 * u[i])), 0, 2);
            if (digit[i] != 1) middle = false;
        }
        if (middle) {
            double d = INFINITY;
            for (int i = 0; i < 3; ++i) d = std::min({d, u[i] - 1.0 / 3.0, 2.0 / 3.0 - u[i]});
            return side * std::max(d, 0.0);
        }
        for (int i = 0; i < 3; ++i) u[i] = 3.0 * u[i] - digit[i];
        side /= 3.0;
    }
    return 0.0;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "tube radius must be positive and finite");
}

}  // namespace

double distance_to_set(std::span<const double> x, const CompactSetDescriptor& set) {
    if (x.size() != set.ambient_dim()) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
    for (double v : x) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "point coordinates must be finite");
    }
    return std::visit(overloaded{
                          [&](const PointSet& s) { return point_distance(x, s.points); },
                          [&](const PointCloud& s) { return point_distance(x, s.points); },
                          [&](const CantorLike& c) { return cantor_distance(x[0], c); },
                          [&](const FractalStringBoundary& s) {
                              return string_distance(x[0], s, set.bounding_box().hi[0]);
                          },
                          [&](const SierpinskiGasket&) { return gasket_distance(x[0], x[1]); },
                          [&](const SierpinskiCarpet3D&) { return carpet_distance(x); },
                      },
                      set.variant());
}

std::string to_string(TubeMethod m) {
    switch (m) {
        case TubeMethod::Exact1D: return "exact_1d";
        case TubeMethod::GridCount: return "grid_count";
        case TubeMethod::MonteCarlo: return "monte_carlo";
    }
    return "unknown";
}

TubeMethod tube_method_from_string(const std::string& name) {
    if (name == "exact_1d") return TubeMethod::Exact1D;
    if (name == "grid_count") return TubeMethod::GridCount;
    if (name == "monte_carlo") return TubeMethod::MonteCarlo;
    throw Error(ErrorCode::InvalidArgument, "unknown tube method '" + name + "'");
}

DistanceField DistanceField::grid(const CompactSetDescriptor& set, double max_radius, double cell_size,
                                  std::size_t budget) {
    require_positive_t(max_radius);
    if (!(cell_size > 0.0)) throw Error(ErrorCode::InvalidArgument, "cell size must be positive");
    const std::size_t dim = set.ambient_dim();
    Box box = set.bounding_box().expanded(max_radius + cell_size);
    std::vector<std::size_t> cells(dim);
    double total = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
        cells[i] = static_cast<std::size_t>(std::ceil((box.hi[i] - box.lo[i]) / cell_size));
        total *= static_cast<double>(cells[i]);
    }
    if (total > static_cast<double>(budget)) {
        throw Error(ErrorCode::ResolutionTooCoarse,
                    "grid needs " + std::to_string(static_cast<long long>(total)) + " cells, budget is " +
                        std::to_string(budget));
    }
    DistanceField f;
    f.method_ = TubeMethod::GridCount;
    f.dim_ = dim;
    f.sample_count_ = static_cast<std::size_t>(total);
    f.box_volume_ = std::pow(cell_size, static_cast<double>(dim)) * total;
    f.half_diagonal_ = 0.5 * cell_size * std::sqrt(static_cast<double>(dim));
    f.max_radius_ = max_radius;
    f.raw_.resize(f.sample_count_);
    const std::size_t n = f.sample_count_;
    detail::parallel_chunks(detail::kChunks, [&](std::size_t chunk) {
        std::size_t begin = n * chunk / detail::kChunks, end = n * (chunk + 1) / detail::kChunks;
        std::vector<double> x(dim);
        for (std::size_t idx = begin; idx < end; ++idx) {
            std::size_t rem = idx;
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] = box.lo[i] + (static_cast<double>(rem % cells[i]) + 0.5) * cell_size;
                rem /= cells[i];
            }
            f.raw_[idx] = distance_to_set(x, set);
        }
    });
    f.sorted_ = f.raw_;
    std::sort(f.sorted_.begin(), f.sorted_.end());
    return f;
}

DistanceField DistanceField::jittered(const CompactSetDescriptor& set, double max_radius, std::size_t samples,
                                      std::uint64_t seed, std::size_t budget) {
    require_positive_t(max_radius);
    if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
    const std::size_t dim = set.ambient_dim();
    const Box box = set.bounding_box().expanded(max_radius);
    auto per_axis = static_cast<std::size_t>(
        std::max(1.0, std::round(std::pow(static_cast<double>(samples), 1.0 / static_cast<double>(dim)))));
    double total = std::pow(static_cast<double>(per_axis), static_cast<double>(dim));
    if (total > static_cast<double>(budget)) {
        throw Error(ErrorCode::ResolutionTooCoarse, "sample count exceeds budget");
    }
    DistanceField f;
    f.method_ = TubeMethod::MonteCarlo;
    f.dim_ = dim;
    f.sample_count_ = static_cast<std::size_t>(total);
    f.box_volume_ = box.volume();
    f.max_radius_ = max_radius;
    f.raw_.resize(f.sample_count_);
    std::vector<double> width(dim);
    for (std::size_t i = 0; i < dim; ++i) width[i] = (box.hi[i] - box.lo[i]) / static_cast<double>(per_axis);
    const std::size_t n = f.sample_count_;
    detail::parallel_chunks(detail::kChunks, [&](std::size_t chunk) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk)};
        std::mt19937_64 engine(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::size_t begin = n * chunk / detail::kChunks, end = n * (chunk + 1) / detail::kChunks;
        std::vector<double> x(dim);
        for (std::size_t idx = begin; idx < end; ++idx) {
            std::size_t rem = idx;
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] = box.lo[i] + (static_cast<double>(rem % per_axis) + unit(engine)) * width[i];
                rem /= per_axis;
            }
            f.raw_[idx] = distance_to_set(x, set);
        }
    });
    f.sorted_ = f.raw_;
    std::sort(f.sorted_.begin(), f.sorted_.end());
    return f;
}

DistanceField DistanceField::adaptive(const CompactSetDescriptor& set, double max_radius, std::size_t samples,
                                      std::uint64_t seed, std::size_t budget) {
    require_positive_t(max_radius);
    if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
    if (samples > budget) throw Error(ErrorCode::ResolutionTooCoarse, "sample count exceeds budget");
    const std::size_t dim = set.ambient_dim();
    const Box box = set.bounding_box().expanded(max_radius);
    constexpr double kCoarseShare = 0.25;  // leaves spent on the initial uniform partition
    constexpr double kNear = 3.0;          // refine when centre distance < kNear * diagonal
    constexpr int kMaxLevel = 40;
    // Each leaf holds an antithetic pair, so a leaf costs two samples.
    const std::size_t leaf_budget = std::max<std::size_t>(1, samples / 2);
    const auto coarse = static_cast<std::size_t>(std::max(
        1.0, std::floor(std::pow(kCoarseShare * static_cast<double>(leaf_budget), 1.0 / static_cast<double>(dim)))));
    std::vector<double> width0(dim);
    double diag0 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        width0[i] = (box.hi[i] - box.lo[i]) / static_cast<double>(coarse);
        diag0 += width0[i] * width0[i];
    }
    diag0 = std::sqrt(diag0);

    // Leaves as lower corners plus refinement level.
    std::size_t leaves = 1;
    for (std::size_t i = 0; i < dim; ++i) leaves *= coarse;
    std::vector<double> corner(leaves * dim);
    std::vector<int> level(leaves, 0);
    for (std::size_t idx = 0; idx < leaves; ++idx) {
        std::size_t rem = idx;
        for (std::size_t i = 0; i < dim; ++i) {
            corner[idx * dim + i] = box.lo[i] + static_cast<double>(rem % coarse) * width0[i];
            rem /= coarse;
        }
    }

    const std::size_t children = std::size_t{1} << dim;
    std::vector<std::size_t> frontier(leaves);
    for (std::size_t i = 0; i < leaves; ++i) frontier[i] = i;
    for (int lvl = 0; lvl < kMaxLevel && !frontier.empty(); ++lvl) {
        const double scale = std::ldexp(1.0, -lvl);
        std::vector<double> centre_dist(frontier.size());
        detail::parallel_chunks(detail::kChunks, [&](std::size_t chunk) {
            const std::size_t m = frontier.size();
            std::vector<double> x(dim);
            for (std::size_t k = m * chunk / detail::kChunks; k < m * (chunk + 1) / detail::kChunks; ++k) {
                for (std::size_t i = 0; i < dim; ++i) x[i] = corner[frontier[k] * dim + i] + 0.5 * scale * width0[i];
                centre_dist[k] = distance_to_set(x, set);
            }
        });
        std::vector<std::size_t> near;
        for (std::size_t k = 0; k < frontier.size(); ++k) {
            // The outer level set d = max_radius also bounds every tube and zeta integral.
            centre_dist[k] = std::min(centre_dist[k], std::abs(centre_dist[k] - max_radius));
            if (centre_dist[k] < kNear * scale * diag0) near.push_back(k);
        }
        const std::size_t room = leaf_budget > leaves ? (leaf_budget - leaves) / (children - 1) : 0;
        bool last = false;
        if (near.size() > room) {
            std::stable_sort(near.begin(), near.end(),
                             [&](std::size_t a, std::size_t b) { return centre_dist[a] < centre_dist[b]; });
            near.resize(room);
            last = true;
        }
        std::vector<std::size_t> next;
        next.reserve(near.size() * children);
        corner.resize((leaves + near.size() * (children - 1)) * dim);
        level.resize(leaves + near.size() * (children - 1));
        for (std::size_t k : near) {
            const std::size_t parent = frontier[k];
            level[parent] = lvl + 1;
            next.push_back(parent);
            for (std::size_t c = 1; c < children; ++c) {
                for (std::size_t i = 0; i < dim; ++i) {
                    corner[leaves * dim + i] =
                        corner[parent * dim + i] + (((c >> i) & 1U) ? 0.5 * scale * width0[i] : 0.0);
                }
                level[leaves] = lvl + 1;
                next.push_back(leaves++);
            }
        }
        frontier = std::move(next);
        if (last) break;
    }

    DistanceField f;
    f.method_ = TubeMethod::MonteCarlo;
    f.dim_ = dim;
    f.sample_count_ = 2 * leaves;
    f.box_volume_ = box.volume();
    f.half_diagonal_ = diag0;
    f.max_radius_ = max_radius;
    f.raw_.resize(2 * leaves);
    f.weights_.resize(2 * leaves);
    double coarse_volume = 1.0;
    for (double w : width0) coarse_volume *= w;
    detail::parallel_chunks(detail::kChunks, [&](std::size_t chunk) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk)};
        std::mt19937_64 engine(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x(dim), mirror(dim);
        for (std::size_t idx = leaves * chunk / detail::kChunks; idx < leaves * (chunk + 1) / detail::kChunks; ++idx) {
            const double scale = std::ldexp(1.0, -level[idx]);
            for (std::size_t i = 0; i < dim; ++i) {
                const double u = unit(engine);
                x[i] = corner[idx * dim + i] + u * scale * width0[i];
                mirror[i] = corner[idx * dim + i] + (1.0 - u) * scale * width0[i];
            }
            const double w = 0.5 * std::ldexp(coarse_volume, -level[idx] * static_cast<int>(dim));
            f.raw_[2 * idx] = distance_to_set(x, set);
            f.raw_[2 * idx + 1] = distance_to_set(mirror, set);
            f.weights_[2 * idx] = w;
            f.weights_[2 * idx + 1] = w;
        }
    });

    const std::size_t n = f.sample_count_;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f.raw_[a] < f.raw_[b]; });
    f.sorted_.resize(n);
    f.cum_w_.assign(n + 1, 0.0);
    f.cum_w2_.assign(n + 1, 0.0);
    detail::CompensatedSum cw, cw2;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = f.weights_[order[k]];
        f.sorted_[k] = f.raw_[order[k]];
        cw.add(w);
        cw2.add(w * w);
        f.cum_w_[k + 1] = cw.value();
        f.cum_w2_[k + 1] = cw2.value();
    }
    return f;
}

TubeSample DistanceField::tube(double t) const {
    require_positive_t(t);
    if (t > max_radius_ * (1.0 + 1e-12)) {
        throw Error(ErrorCode::InvalidArgument, "t exceeds the radius covered by this distance field");
    }
    const auto below = static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin());
    if (weighted()) {
        // Only strata that can straddle the level set t contribute variance,
        // at most w^2 / 4 each.
        auto lo = static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), t - half_diagonal_) - sorted_.begin());
        auto hi = static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), t + half_diagonal_) - sorted_.begin());
        return {t, cum_w_[below], method_, 1.5 * std::sqrt(cum_w2_[hi] - cum_w2_[lo])};
    }
    auto inside = static_cast<double>(below);
    const double cell = cell_volume();
    TubeSample s{t, inside * cell, method_, std::nullopt};
    if (method_ == TubeMethod::GridCount) {
        // A cell is ambiguous when its centre is within the half diagonal of the tube boundary.
        auto lo = std::lower_bound(sorted_.begin(), sorted_.end(), t - half_diagonal_);
        auto hi = std::upper_bound(sorted_.begin(), sorted_.end(), t + half_diagonal_);
        s.error_bound = static_cast<double>(hi - lo) * cell;
    } else {
        double n = static_cast<double>(sample_count_);
        double p = inside / n;
        s.error_bound = 3.0 * box_volume_ * std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
    }
    return s;
}

double exact_tube_volume_1d(const GapProfile& profile, double t) {
    require_positive_t(t);
    // Summed as 2t per component of A_t plus the gaps it swallows whole, so
    // tiny volumes are not lost to cancellation against the hull length.
    double components = 1.0;
    double swallowed = 0.0;
    double gap_total = 0.0;
    for (double g : profile.gaps) {
        gap_total += g;
        if (g > 2.0 * t) {
            components += 1.0;
        } else {
            swallowed += g;
        }
    }
    if (profile.family) {
        const auto& f = *profile.family;
        const double q = f.ratio * f.multiplicity;
        double len = f.first;
        double count = 1.0;
        double level_total = f.first;  // first * q^n
        while (len > 2.0 * t) {
            components += count;
            len *= f.ratio;
            count *= f.multiplicity;
            level_total *= q;
        }
        swallowed += level_total / (1.0 - q);
        gap_total += total_length(f);
    }
    double measure = profile.hull - gap_total;
    if (std::abs(measure) <= 1e-12 * profile.hull) measure = 0.0;
    return measure + swallowed + 2.0 * t * components;
}

IntervalUnion cantor_stage(const CantorLike& c, unsigned depth) {
    std::vector<Interval> current{{0.0, c.scale}};
    for (unsigned d = 0; d < depth; ++d) {
        std::vector<Interval> next;
        next.reserve(current.size() * 2);
        for (const auto& iv : current) {
            double len = iv.hi - iv.lo;
            next.push_back({iv.lo, iv.lo + c.ratio * len});
            next.push_back({iv.hi - c.ratio * len, iv.hi});
        }
        current = std::move(next);
    }
    return IntervalUnion::from_intervals(std::move(current));
}

unsigned cantor_depth_for(const CantorLike& c, double t) {
    require_positive_t(t);
    unsigned n = 0;
    double gap = (1.0 - 2.0 * c.ratio) * c.scale;
    while (gap > 2.0 * t) {
        gap *= c.ratio;
        ++n;
    }
    return n;
}

namespace {

TubeMethod resolve_method(const CompactSetDescriptor& set, const TubeOptions& opts) {
    TubeMethod m = opts.method.value_or(set.has_exact_tube() ? TubeMethod::Exact1D : TubeMethod::GridCount);
    if (m == TubeMethod::Exact1D && !set.has_exact_tube()) {
        throw Error(ErrorCode::InvalidArgument, "exact tube volumes are only available for one-dimensional sets");
    }
    return m;
}

double exact_tube(const CompactSetDescriptor& set, const GapProfile& profile, double t) {
    // Finite sets go through the literal interval sweep.
    if (const auto* ps = std::get_if<PointSet>(&set.variant())) {
        std::vector<double> xs;
        for (const auto& p : ps->points) xs.push_back(p[0]);
        return fatten_intervals(IntervalUnion::from_points(xs), t).total_length();
    }
    if (const auto* s = std::get_if<FractalStringBoundary>(&set.variant()); s && !s->generator) {
        std::vector<double> xs{0.0};
        double a = 0.0;
        for (auto it = s->lengths.rbegin(); it != s->lengths.rend(); ++it) {
            a += *it;
            xs.push_back(a);
        }
        return fatten_intervals(IntervalUnion::from_points(xs), t).total_length();
    }
    return exact_tube_volume_1d(profile, t);
}

}  // namespace

std::vector<TubeSample> sample_tube_curve(const CompactSetDescriptor& set, std::span<const double> t_values,
                                          const TubeOptions& opts) {
    if (t_values.empty()) return {};
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        require_positive_t(t_values[i]);
        if (i > 0 && t_values[i] < t_values[i - 1]) throw Error(ErrorCode::InvalidArgument, "t values must be ascending");
    }
    const TubeMethod method = resolve_method(set, opts);
    std::vector<TubeSample> out;
    out.reserve(t_values.size());
    if (method == TubeMethod::Exact1D) {
        GapProfile profile = gap_profile(set);
        for (double t : t_values) out.push_back({t, exact_tube(set, profile, t), TubeMethod::Exact1D, 0.0});
    } else {
        const double t_max = t_values.back();
        DistanceField field = method == TubeMethod::GridCount
                                  ? DistanceField::grid(set, t_max, opts.cell_size, opts.budget)
                                  : DistanceField::jittered(set, t_max, opts.mc_samples, opts.seed, opts.budget);
        for (double t : t_values) out.push_back(field.tube(t));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& s = out[i];
        if (opts.max_relative_error && s.error_bound && *s.error_bound > *opts.max_relative_error * s.volume) {
            throw Error(ErrorCode::ResolutionTooCoarse, "error bound at t = " + std::to_string(s.t) +
                                                            " exceeds the requested relative error");
        }
        if (i > 0) {
            double slack = out[i].error_bound.value_or(0.0) + out[i - 1].error_bound.value_or(0.0);
            if (out[i].volume + slack + 1e-15 < out[i - 1].volume) {
                throw Error(ErrorCode::InvalidArgument, "tube volumes are not monotone in t");
            }
        }
    }
    return out;
}

TubeSample tube_volume(const CompactSetDescriptor& set, double t, const TubeOptions& opts) {
    std::array<double, 1> ts{t};
    return sample_tube_curve(set, ts, opts).front();
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw Error(ErrorCode::InvalidArgument, "bad log-spaced range");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = lo;
        return v;
    }
    double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) v[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

}  // namespace fractal::geometry
