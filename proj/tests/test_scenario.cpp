#include <gtest/gtest.h>

#include <algorithm>

#include "qmsym/scenario.hpp"

using namespace qmsym;

namespace {

ScenarioConfig multiworld_config(int k, int m = 8, double delta = 0.25) {
    ScenarioConfig c;
    c.qubits = k;
    c.half_width = m;
    c.spacing = delta;
    return c;
}

const NamedCheck *find_check(const ScenarioReport &r, const std::string &prefix) {
    for (const auto &c : r.checks)
        if (c.name.rfind(prefix, 0) == 0) return &c;
    return nullptr;
}

} // namespace

TEST(PrincePauper, DefaultsPass) {
    const auto r = run_prince_pauper(ScenarioConfig{});
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.worlds.size(), 2u);
    ASSERT_EQ(r.pairs.size(), 1u);
    EXPECT_TRUE(r.certificates.front().pass);
    EXPECT_LE(r.pairs[0].isomorphism.max_state_residual(), 1e-10);
    EXPECT_NEAR(r.pairs[0].witness.find("pointer Z")->gap, 2.0, 1e-9);
    EXPECT_NEAR(r.pairs[0].witness.find("system A")->gap, 2.0, 1e-12);
    EXPECT_NEAR(*r.worlds[0].readouts[0].branches[0].pointer_mean, -1.0, 1e-9);
    EXPECT_NEAR(*r.worlds[1].readouts[0].branches[1].pointer_mean, 1.0, 1e-9);
    EXPECT_TRUE(r.notes.empty());
}

TEST(PrincePauper, SwapFixesReadyPointer) {
    const auto r = run_prince_pauper(ScenarioConfig{});
    const auto *c = find_check(r, "S fixes the ready pointer");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->value, 0.0);
}

TEST(PrincePauper, RandomUnitaryControlIsRejected) {
    const auto r = run_prince_pauper(ScenarioConfig{});
    ASSERT_EQ(r.controls.size(), 1u);
    EXPECT_TRUE(r.controls[0].rejected);
    EXPECT_GT(r.controls[0].hamiltonian_residual, 0.1);
}

TEST(PrincePauper, ZeroCouplingDistinctOnlyThroughSystem) {
    ScenarioConfig c;
    c.coupling = 0.0;
    const auto r = run_prince_pauper(c);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.pairs[0].witness.find("pointer Z")->gap, 0.0);
    EXPECT_NEAR(r.pairs[0].witness.find("system A")->gap, 2.0, 1e-12);
    EXPECT_TRUE(std::any_of(r.notes.begin(), r.notes.end(),
                            [](const std::string &n) { return n.find("g = 0") != std::string::npos; }));
}

TEST(PrincePauper, OffGridDurationIsNoted) {
    ScenarioConfig c;
    c.duration = 0.9;
    const auto r = run_prince_pauper(c);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(std::any_of(r.notes.begin(), r.notes.end(),
                            [](const std::string &n) { return n.find("off-grid") != std::string::npos; }));
}

TEST(PrincePauper, RequiresSingleQubit) {
    ScenarioConfig c;
    c.qubits = 2;
    EXPECT_THROW(run_prince_pauper(c), ConfigError);
}

TEST(ConfigGuards, WraparoundAndRanges) {
    ScenarioConfig c;
    c.half_width = 2;
    try {
        validate_measurement_config(c);
        FAIL() << "expected wraparound error";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.field(), "M");
        EXPECT_NE(std::string(e.what()).find("wraparound"), std::string::npos);
    }
    ScenarioConfig k4;
    k4.qubits = 4;
    EXPECT_THROW(validate_measurement_config(k4), ConfigError);
    ScenarioConfig capped = multiworld_config(3);
    capped.dimension_cap = 1000;
    EXPECT_THROW(validate_measurement_config(capped), ConfigError);
    ScenarioConfig times;
    times.sample_times = {0.0, 2.0};
    EXPECT_THROW(validate_measurement_config(times), ConfigError);
}

TEST(Multiworld, SingleQubitBaseCase) {
    const auto r = run_multiworld(multiworld_config(1));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.worlds.size(), 2u);
    EXPECT_EQ(r.pairs.size(), 1u);
}

TEST(Multiworld, ThreeQubitsGiveEightWorlds) {
    const auto r = run_multiworld(multiworld_config(3));
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.worlds.size(), 8u);
    ASSERT_EQ(r.pairs.size(), 28u);
    for (const auto &p : r.pairs) {
        EXPECT_TRUE(p.isomorphism.pass) << p.first << "," << p.second;
        EXPECT_TRUE(p.witness.distinct) << p.first << "," << p.second;
        for (std::size_t i = 0; i < 3; ++i) {
            const bool differ = ((p.first ^ p.second) >> (2 - i)) & 1U;
            const double gap = p.witness.find("Z[" + std::to_string(i) + "]")->gap;
            if (differ) {
                EXPECT_GE(gap, 2.0 - 1e-6);
            } else {
                EXPECT_LE(gap, 1e-12);
            }
        }
    }
    for (const auto &c : r.checks) EXPECT_TRUE(c.pass) << c.name;
}

TEST(Multiworld, WorldLabelsFollowBitPattern) {
    const auto r = run_multiworld(multiworld_config(2));
    ASSERT_EQ(r.worlds.size(), 4u);
    EXPECT_EQ(r.worlds[0].outcomes, (std::vector<double>{1, 1}));
    EXPECT_EQ(r.worlds[1].outcomes, (std::vector<double>{1, -1}));
    EXPECT_EQ(r.worlds[3].outcomes, (std::vector<double>{-1, -1}));
    EXPECT_EQ(r.worlds[2].label, "-1,+1");
}

TEST(Multiworld, PerFactorSwapsCommuteWithAssembledHamiltonian) {
    for (auto [k, m, delta] : {std::tuple{2, 4, 0.5}, {3, 2, 1.0}}) {
        const auto c = multiworld_config(k, m, delta);
        const auto setup = c.setup();
        const auto h_factor = interaction_hamiltonian(setup);
        const LocalSum h(std::vector<DenseOperator>(static_cast<std::size_t>(k), h_factor));
        const DenseOperator dense_h = h.to_dense();
        const auto s = parity_swap(setup);
        for (int i = 0; i < k; ++i) {
            const auto si = pattern_swap(s, 0, std::size_t{1} << (k - 1 - i), static_cast<std::size_t>(k));
            const double dense = commutator_norm(dense_h, si.to_dense());
            EXPECT_LE(dense, 1e-12 * dense_h.matrix().norm());
            EXPECT_NEAR(commutator_norm(si, h), dense, 1e-12);
        }
        EXPECT_TRUE(run_multiworld(c).pass);
    }
}

TEST(Multiworld, CompositionOrderDoesNotMatter) {
    const auto c = multiworld_config(2);
    const auto setup = c.setup();
    const auto s = parity_swap(setup);
    const auto s0 = pattern_swap(s, 0, 2, 2);
    const auto s1 = pattern_swap(s, 0, 1, 2);
    const auto h_factor = interaction_hamiltonian(setup);
    const LocalSum h({h_factor, h_factor});
    const auto times = c.times();
    const auto from = make_bqs(h, tensor_product(ready_state(setup, 0u), ready_state(setup, 0u)), times, 1.0);
    const auto to = make_bqs(h, tensor_product(ready_state(setup, 1u), ready_state(setup, 1u)), times, 1.0);
    const auto a = check_isomorphism(s0 * s1, from, to);
    const auto b = check_isomorphism(s1 * s0, from, to);
    EXPECT_TRUE(a.pass);
    EXPECT_TRUE(b.pass);
    EXPECT_EQ(a.state_residuals, b.state_residuals);
    EXPECT_EQ(a.hamiltonian_residual, b.hamiltonian_residual);
    EXPECT_EQ(commutator_norm(s0, s1), 0.0);
}

TEST(Multiworld, SwapsMapReadyWorldsExactly) {
    const auto c = multiworld_config(3, 2, 1.0);
    const auto setup = c.setup();
    const auto s = parity_swap(setup);
    auto world = [&](std::size_t w) {
        ComplexVector psi = ready_state(setup, (w >> 2) & 1U ? 1u : 0u);
        for (int i = 1; i < 3; ++i)
            psi = tensor_product(psi, ready_state(setup, (w >> (2 - i)) & 1U ? 1u : 0u));
        return psi;
    };
    for (std::size_t p = 0; p < 8; ++p)
        for (std::size_t q = 0; q < 8; ++q) EXPECT_EQ(pattern_swap(s, p, q, 3).apply(world(p)), world(q));
}

TEST(ClassicalLevel, RatioTwoPasses) {
    const auto r = run_classical_level(ScenarioConfig{});
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.certificates.size(), 1u);
    EXPECT_EQ(r.certificates[0].commutator_residual, 0.0);
    EXPECT_EQ(*r.certificates[0].exact_index_violations, 0);
    ASSERT_EQ(r.pairs.size(), 1u);
    EXPECT_NEAR(r.pairs[0].witness.find("system A")->gap, 1.0, 1e-12);
}

TEST(ClassicalLevel, EveryDegeneracyLabelPaired) {
    ScenarioConfig c;
    c.degeneracy = 3;
    c.lambda2 = -2.0;
    const auto r = run_classical_level(c);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.pairs.size(), 3u);
    EXPECT_EQ(r.worlds.size(), 6u);
}

TEST(ClassicalLevel, DegeneratePairIsNoted) {
    ScenarioConfig c;
    c.lambda2 = 1.0;
    const auto r = run_classical_level(c);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.pairs.empty());
    ASSERT_FALSE(r.notes.empty());
    EXPECT_NE(r.notes[0].find("identity"), std::string::npos);
}

TEST(ClassicalLevel, ZeroEigenvalueRejected) {
    ScenarioConfig c;
    c.lambda1 = 0.0;
    EXPECT_THROW(run_classical_level(c), ConfigError);
}

TEST(ClassicalLevel, ModelIsCenteredOnFirstEigenvalue) {
    ScenarioConfig c;
    c.lambda1 = 16.0;
    c.lambda2 = 32.0;
    const auto model = make_scaling_model(c);
    const auto start = model.find_eigenvalue(16.0);
    ASSERT_TRUE(start.has_value());
    EXPECT_EQ(start->m, 0);
    EXPECT_TRUE(run_classical_level(c).pass);
}

TEST(CertifyScenarios, Lemma1AndLemma2) {
    EXPECT_TRUE(run_certify_lemma1(ScenarioConfig{}).pass);
    const auto r = run_certify_lemma2(ScenarioConfig{});
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.scenario, "certify-lemma2");
}

TEST(ScenarioReport, FinalizeRequiresEveryPart) {
    ScenarioReport r;
    r.checks.push_back(make_check("ok", 0.0, 1.0));
    r.finalize();
    EXPECT_TRUE(r.pass);
    r.checks.push_back(make_check("bad", 2.0, 1.0));
    r.finalize();
    EXPECT_FALSE(r.pass);
    ScenarioReport indistinct;
    PairCertificate p;
    p.isomorphism.pass = true;
    p.witness.distinct = false;
    indistinct.pairs.push_back(p);
    indistinct.finalize();
    EXPECT_FALSE(indistinct.pass);
}
