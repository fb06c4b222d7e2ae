// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/bench/audit.hpp"

#include <sstream>

#include "forestveil/bench/synthetic.hpp"
#include "forestveil/protocol/online.hpp"
#include "forestveil/protocol/pps.hpp"
#include "forestveil/protocol/tree_eval.hpp"

namespace forestveil::bench {

PteTranscript run_instrumented_pte(const lhe::KeyPair& keys, size_t n_features, int depth,
                                   util::Rng& rng) {
    forest::RandomForest rf = random_forest(1, depth, n_features, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 1, rng);
    std::vector<forest::Milli> x = random_input(n_features, rng);

    // Session-level input submission (outside the per-tree accounting).
    std::vector<lhe::Ciphertext> enc_input;
    for (forest::Milli v : x) enc_input.push_back(lhe::encrypt(keys.pk, mpz_class(v), rng));
    lhe::HomDotContext ctx(keys.pk, enc_input);

    OpCounters user_c, server_c;
    protocol::PteUserTree user(keys.sk, seed, 1, uint16_t(depth), x, &user_c);
    protocol::PteServerTree server(keys.pk, model.trees[0], ctx, &server_c);

    PteTranscript t;
    t.n_features = n_features;
    t.depth = depth;

    auto blocks = user.input_blocks(rng);
    t.user_step1 = user_c.snapshot();
    t.step1_ciphertexts = blocks.size();
    server.node_values(blocks);
    server.randomize(rng);
    t.server_step1 = server_c.snapshot();

    protocol::ScBatch batch = server.comparison_round(rng);
    t.server_step3 = server_c.snapshot() - t.server_step1;
    t.step3_ciphertexts = batch.blinded.size();
    protocol::GammaTilde gt = server.gamma_tilde();
    user.compute_path(batch, gt);
    t.user_step3 = user_c.snapshot() - t.user_step1;

    auto request = user.ot_request(rng);
    auto reply = server.ot_respond(request, rng);
    t.step5_payloads = reply.ciphertexts.size();
    user.receive_share(reply);
    t.user_step5 = user_c.snapshot() - t.user_step1 - t.user_step3;
    t.server_step5 = server_c.snapshot() - t.server_step1 - t.server_step3;
    return t;
}

namespace {

void row(std::vector<AuditRow>& rows, const std::string& name, uint64_t expected,
         uint64_t actual) {
    rows.push_back({name, expected, actual, expected == actual});
}

}  // namespace

std::vector<AuditRow> audit_pte_counts(const PteTranscript& t) {
    uint64_t n = t.n_features;
    uint64_t nodes = (uint64_t(1) << t.depth) - 1;
    uint64_t leaves = nodes + 1;
    uint64_t d = uint64_t(t.depth);
    std::vector<AuditRow> rows;

    row(rows, "step1.user.encryptions", nodes, t.user_step1.encryptions);
    row(rows, "step1.user.prf_calls", nodes, t.user_step1.prf_calls);
    row(rows, "step1.server.scalar_muls", n * nodes, t.server_step1.scalar_muls);
    row(rows, "step1.server.hom_adds", (n + 1) * nodes, t.server_step1.hom_adds);
    row(rows, "step1.comm.ciphertexts", nodes, t.step1_ciphertexts);

    row(rows, "step3.user.decryptions", nodes, t.user_step3.decryptions);
    row(rows, "step3.server.scalar_muls", nodes, t.server_step3.scalar_muls);
    row(rows, "step3.server.hom_adds", nodes, t.server_step3.hom_adds);
    row(rows, "step3.comm.ciphertexts", nodes, t.step3_ciphertexts);

    row(rows, "step5.user.decryptions", 1, t.user_step5.decryptions);
    row(rows, "step5.user.ot_base_calls", d, t.user_step5.ot_base_calls);
    row(rows, "step5.server.hom_adds", leaves, t.server_step5.hom_adds);
    row(rows, "step5.server.ot_base_calls", d, t.server_step5.ot_base_calls);
    row(rows, "step5.comm.payloads", leaves, t.step5_payloads);

    // No operation may appear where the accounting has no entry.
    row(rows, "step1.user.other", 0,
        t.user_step1.decryptions + t.user_step1.hom_adds + t.user_step1.scalar_muls +
            t.user_step1.ot_base_calls);
    row(rows, "step1.server.other", 0,
        t.server_step1.encryptions + t.server_step1.decryptions + t.server_step1.prf_calls +
            t.server_step1.ot_base_calls);
    row(rows, "step3.user.other", 0,
        t.user_step3.encryptions + t.user_step3.hom_adds + t.user_step3.scalar_muls +
            t.user_step3.prf_calls + t.user_step3.ot_base_calls);
    row(rows, "step3.server.other", 0,
        t.server_step3.encryptions + t.server_step3.decryptions + t.server_step3.prf_calls +
            t.server_step3.ot_base_calls);
    row(rows, "step5.user.other", 0,
        t.user_step5.encryptions + t.user_step5.hom_adds + t.user_step5.scalar_muls +
            t.user_step5.prf_calls);
    row(rows, "step5.server.other", 0,
        t.server_step5.encryptions + t.server_step5.decryptions + t.server_step5.scalar_muls +
            t.server_step5.prf_calls);
    return rows;
}

bool all_pass(const std::vector<AuditRow>& rows) {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

std::string audit_csv(const std::vector<AuditRow>& rows) {
    std::ostringstream out;
    out << "row,expected,actual,pass\n";
    for (const auto& r : rows)
        out << r.name << ',' << r.expected << ',' << r.actual << ',' << (r.pass ? 1 : 0) << '\n';
    return out.str();
}

PpsCommAudit audit_pps_comm(const lhe::KeyPair& keys, size_t n_features, int depth,
                            util::Rng& rng) {
    forest::RandomForest rf = random_forest(1, depth, n_features, rng);
    std::vector<forest::Milli> x = random_input(n_features, rng);
    protocol::PpsResult res = protocol::pps_score(rf, keys.sk, x, rng, rng);

    PpsCommAudit audit;
    audit.n_features = n_features;
    audit.depth = depth;
    audit.measured = res.stats.total();
    audit.expected = uint64_t(n_features) + (uint64_t(1) << (depth + 1));
    uint64_t diff = audit.measured > audit.expected ? audit.measured - audit.expected
                                                    : audit.expected - audit.measured;
    audit.pass = diff <= 2;
    return audit;
}

namespace {

uint64_t ct_wire(const lhe::PublicKey& pk) { return 4 + pk.ciphertext_bytes(); }
uint64_t elem_wire(const lhe::PublicKey& pk) { return 4 + pk.element_bytes(); }
constexpr uint64_t kPointBytes = 33;

}  // namespace

std::map<std::string, uint64_t> expected_user_sent_payload(const lhe::PublicKey& pk,
                                                           const QueryShape& shape) {
    std::map<std::string, uint64_t> out;
    out["HELLO"] = 3;
    uint64_t blocks = 0, ot_r1 = 0;
    for (auto [m, d] : shape.providers) {
        blocks += uint64_t(m) * ((uint64_t(1) << d) - 1);
        ot_r1 += uint64_t(m) * (12 + kPointBytes * d);
    }
    out["QUERY_INIT"] = 4 + (shape.n_features + blocks) * ct_wire(pk);
    out["OT_R1"] = ot_r1;
    return out;
}

std::map<std::string, uint64_t> expected_user_received_payload(const lhe::PublicKey& pk,
                                                               const QueryShape& shape) {
    std::map<std::string, uint64_t> out;
    uint64_t pk_len = pk.serialize().size();
    uint64_t manifest = 4 + 1 + 4 + pk_len + 4 + 4;
    uint64_t sc = 0, gamma = 0, ot_r2 = 0;
    for (auto [m, d] : shape.providers) {
        manifest += 10 + 2 * ct_wire(pk);
        uint64_t nodes = (uint64_t(1) << d) - 1;
        sc += uint64_t(m) * nodes * ct_wire(pk);
        gamma += uint64_t(m) * ((nodes + 7) / 8);
        ot_r2 += uint64_t(m) *
                 (20 + (kPointBytes + 32) * d + (uint64_t(1) << d) * (ct_wire(pk) + 16));
    }
    out["MANIFEST"] = manifest;
    out["SC_BATCH"] = sc;
    out["GAMMA_TILDE"] = gamma;
    out["OT_R2"] = ot_r2;
    out["FINAL_SHARE"] = elem_wire(pk);
    return out;
}

}  // namespace forestveil::bench
