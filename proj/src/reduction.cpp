#include "rsred/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsred {

ThreeDmInstance make_three_dm(unsigned t, std::vector<std::array<unsigned, 3>> triples) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    for (const auto& tr : triples)
        for (unsigned v : tr)
            if (v < 1 || v > t) throw std::invalid_argument("triple coordinate out of range");
    std::sort(triples.begin(), triples.end());
    for (std::size_t i = 0; i + 1 < triples.size(); ++i)
        if (triples[i] == triples[i + 1]) throw std::invalid_argument("duplicate triple");
    return ThreeDmInstance{t, std::move(triples)};
}

FieldElement encode_triple(const FieldContext& fc, unsigned t, std::array<unsigned, 3> triple) {
    if (fc.m < 3 * t) throw std::invalid_argument("field too small for triple encoding");
    for (unsigned v : triple)
        if (v < 1 || v > t) throw std::invalid_argument("triple coordinate out of range");
    FieldElement x;
    fe_set_bit(x, triple[0] - 1);
    fe_set_bit(x, t + triple[1] - 1);
    fe_set_bit(x, 2 * t + triple[2] - 1);
    return x;
}

std::array<unsigned, 3> canonical_triple(unsigned t, std::size_t j) {
    if (j < 1 || j > (std::size_t)t * t * t)
        throw std::invalid_argument("triple index out of range");
    std::size_t i = j - 1;
    return {unsigned(i / ((std::size_t)t * t)) + 1, unsigned(i / t % t) + 1, unsigned(i % t) + 1};
}

std::vector<std::uint8_t> chi_of(const ThreeDmInstance& inst) {
    const unsigned t = inst.t;
    std::vector<std::uint8_t> chi((std::size_t)t * t * t, 0);
    for (const auto& tr : inst.triples) {
        std::size_t idx = (std::size_t)(tr[0] - 1) * t * t + (std::size_t)(tr[1] - 1) * t +
                          (tr[2] - 1);
        chi[idx] = 1;
    }
    return chi;
}

FieldElement encode_point_prep(const FieldContext& fc, unsigned t, std::size_t j) {
    const std::size_t t3 = (std::size_t)t * t * t;
    if (j < 1 || j > 4 * t3) throw std::invalid_argument("point index out of range");
    if (fc.m < 3 * (t3 + t)) throw std::invalid_argument("field too small for point encoding");
    FieldElement x;
    if (j <= t3) {
        auto tr = canonical_triple(t, j);
        fe_set_bit(x, tr[0] - 1);
        fe_set_bit(x, t + tr[1] - 1);
        fe_set_bit(x, 2 * t + tr[2] - 1);
        fe_set_bit(x, unsigned(3 * t + j - 1));
    } else if (j <= 2 * t3) {
        fe_set_bit(x, unsigned(3 * t + (j - t3) - 1));
        fe_set_bit(x, unsigned(3 * t + j - 1));
        fe_set_bit(x, unsigned(3 * t + (j + t3) - 1));
    } else if (j <= 3 * t3) {
        fe_set_bit(x, unsigned(3 * t + (j - t3) - 1));
        fe_set_bit(x, unsigned(3 * t + j - 1));
    } else {
        fe_set_bit(x, unsigned(3 * t + (j - t3) - 1));
    }
    return x;
}

FieldElement gamma_std(const FieldContext& fc) { return fe_all_ones(fc.m); }

FieldElement gamma_prep(const FieldContext& fc, unsigned t,
                        const std::vector<std::uint8_t>& chi) {
    const std::size_t t3 = (std::size_t)t * t * t;
    if (chi.size() != t3) throw std::invalid_argument("chi length must be t^3");
    if (fc.m != 3 * (t3 + t)) throw std::invalid_argument("field degree must be 3(t^3 + t)");
    FieldElement g;
    for (unsigned i = 0; i < 3 * t; ++i) fe_set_bit(g, i);
    for (std::size_t i = 0; i < t3; ++i)
        if (chi[i]) {
            fe_set_bit(g, unsigned(3 * t + i));
            fe_set_bit(g, unsigned(3 * t + t3 + i));
        }
    for (std::size_t i = 0; i < t3; ++i) fe_set_bit(g, unsigned(3 * t + 2 * t3 + i));
    return g;
}

std::vector<FieldElement> target_coefficients(const FieldContext& fc,
                                              const std::vector<FieldElement>& xs,
                                              FieldElement gamma) {
    const std::size_t n = xs.size();
    if (n < 1) throw std::invalid_argument("need at least one point");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (xs[i] == xs[j]) throw std::invalid_argument("points must be distinct");

    FieldElement total = fe_zero();
    for (FieldElement x : xs) total = add(total, x);

    std::vector<FieldElement> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        FieldElement num = add(gamma, add(total, xs[j]));  // gamma + sum over i != j
        FieldElement den = fe_one();
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) den = mul(fc, den, add(xs[j], xs[i]));
        z[j] = mul(fc, num, inv(fc, den));
    }
    return z;
}

BitMatrix build_w_matrix(unsigned t) {
    const std::size_t t3 = (std::size_t)t * t * t;
    BitMatrix w(3 * (t3 + t), 4 * t3);
    // independent of any field, but reuse the point encoder so the columns
    // are the actual bit patterns by construction
    FieldContext shape;  // only .m is consulted by encode_point_prep
    shape.m = unsigned(3 * (t3 + t));
    for (std::size_t j = 1; j <= 4 * t3; ++j) {
        FieldElement x = encode_point_prep(shape, t, j);
        for (std::size_t i = 0; i < w.rows; ++i)
            if (fe_bit(x, unsigned(i))) w.at(i, j - 1) = 1;
    }
    return w;
}

namespace {

Reduced convert_common(std::shared_ptr<const FieldContext> fc, std::vector<FieldElement> points,
                       std::size_t k, std::size_t w, FieldElement gamma, ReductionMode mode) {
    RsCode code = make_rs_code(std::move(fc), std::move(points), k);
    const FieldContext& f = *code.fc;

    std::vector<FieldElement> head(code.points.begin(), code.points.begin() + (w + 1));
    std::vector<FieldElement> z = target_coefficients(f, head, gamma);

    GrsScalers scalers = grs_scalers(code);
    std::vector<FieldElement> zpad(code.n(), fe_zero());
    std::copy(z.begin(), z.end(), zpad.begin());
    std::vector<FieldElement> target = apply_scaling_inv(f, scalers, zpad);

    ReductionTrace trace;
    trace.mode = mode;
    trace.gamma = gamma;
    trace.z = std::move(z);
    trace.scalers = std::move(scalers);
    trace.syndrome = syndrome_matrix(code);

    return Reduced{MldRsInstance{std::move(code), w, std::move(target)}, std::move(trace)};
}

}  // namespace

Reduced convert_std(const ThreeDmInstance& inst) {
    const unsigned t = inst.t;
    if (t < 1 || 3 * t > 128)
        throw std::invalid_argument("t out of range for the plain construction");
    const std::size_t n = inst.triples.size();
    if (n <= (std::size_t)t + 1)
        throw InstanceTooSmallError("need more than t+1 triples, got " + std::to_string(n));

    auto fc = std::make_shared<const FieldContext>(build_field(3 * t));
    std::vector<FieldElement> points(n);
    for (std::size_t j = 0; j < n; ++j) points[j] = encode_triple(*fc, t, inst.triples[j]);

    FieldElement gamma = gamma_std(*fc);
    return convert_common(std::move(fc), std::move(points), n - (t + 1), t, gamma,
                          ReductionMode::Std);
}

Reduced convert_prep(const ThreeDmInstance& inst) {
    const unsigned t = inst.t;
    const std::size_t t3 = (std::size_t)t * t * t;
    if (t < 1 || 3 * (t3 + t) > 128)
        throw std::invalid_argument("t out of range for the preprocessing construction");

    auto fc = std::make_shared<const FieldContext>(build_field(unsigned(3 * (t3 + t))));
    std::vector<FieldElement> points(4 * t3);
    for (std::size_t j = 1; j <= 4 * t3; ++j) points[j - 1] = encode_point_prep(*fc, t, j);

    std::vector<std::uint8_t> chi = chi_of(inst);
    FieldElement gamma = gamma_prep(*fc, t, chi);

    Reduced red = convert_common(std::move(fc), std::move(points), 3 * t3 - (t + 1), t3 + t,
                                 gamma, ReductionMode::Prep);
    red.trace.w_matrix = build_w_matrix(t);
    red.trace.chi = std::move(chi);
    return red;
}

ThreeDmInstance random_three_dm(unsigned t, double density, std::mt19937_64& rng) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    if (!(density > 0.0 && density <= 1.0))
        throw std::invalid_argument("density must be in (0, 1]");
    const std::size_t t3 = (std::size_t)t * t * t;
    // fixed-point threshold keeps the draw identical across platforms
    const std::uint64_t threshold =
        (std::uint64_t)std::llround(density * 9007199254740992.0);  // density * 2^53
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::array<unsigned, 3>> triples;
        for (std::size_t j = 1; j <= t3; ++j) {
            std::uint64_t draw = rng() >> 11;
            if (draw < threshold) triples.push_back(canonical_triple(t, j));
        }
        if (triples.size() > (std::size_t)t + 1) return make_three_dm(t, std::move(triples));
    }
    throw std::runtime_error("could not draw an instance with more than t+1 triples");
}

}  // namespace rsred
