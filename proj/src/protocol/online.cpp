// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/protocol/online.hpp"

#include <cinttypes>
#include <cstdio>

#include "forestveil/util/parallel.hpp"

namespace forestveil::protocol {

std::string format_prediction(int64_t sum_scaled, uint32_t total_trees) {
    if (total_trees == 0) throw ProtocolError("no trees evaluated");
    // y = sum / (1000 m); shift to micro-units and round half up.
    int64_t m = int64_t(total_trees);
    int64_t micro = (2 * sum_scaled * 1000 + m) / (2 * m);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%" PRId64 ".%06" PRId64, micro / 1000000,
                  micro >= 0 ? micro % 1000000 : -(micro % 1000000));
    return buf;
}

crypto::PrfSeed decrypt_seed(const lhe::SecretKey& sk,
                             const std::array<lhe::Ciphertext, 2>& enc_seed) {
    mpz_class hi = lhe::decrypt(sk, enc_seed[0]);
    mpz_class lo = lhe::decrypt(sk, enc_seed[1]);
    if (mpz_sizeinbase(hi.get_mpz_t(), 2) > 64 || mpz_sizeinbase(lo.get_mpz_t(), 2) > 64)
        throw ProtocolError("seed block out of range");
    return crypto::PrfSeed::from_halves(mpz_get_ui(hi.get_mpz_t()), mpz_get_ui(lo.get_mpz_t()));
}

OnlineResult online_predict(const std::vector<EncryptedModel>& models, const lhe::SecretKey& sk,
                            std::span<const forest::Milli> x, util::Rng& server_rng,
                            util::Rng& user_rng, bench::OpCounters* server_counters,
                            bench::OpCounters* user_counters) {
    if (models.empty()) throw ProtocolError("no models available");
    const lhe::PublicKey& pk = sk.public_key();
    size_t n = models.front().n_features;
    for (const auto& m : models)
        if (m.n_features != n) throw ProtocolError("inconsistent feature dimension across models");
    if (x.size() != n) throw ProtocolError("input dimension mismatch");

    // User: recover the seeds and submit the encrypted input.
    std::vector<crypto::PrfSeed> seeds;
    std::vector<lhe::Ciphertext> enc_input;
    {
        bench::CounterScope scope(user_counters);
        seeds.reserve(models.size());
        for (const auto& m : models) seeds.push_back(decrypt_seed(sk, m.enc_seed));
        enc_input.reserve(n);
        for (size_t s = 0; s < n; ++s)
            enc_input.push_back(lhe::encrypt_with_sk(sk, mpz_class(x[s]), user_rng));
    }

    lhe::HomDotContext input_ctx(pk, enc_input);

    struct TreeRef {
        const EncryptedModel* model;
        const EncryptedTree* tree;
        uint64_t server_seed, user_seed;
    };
    std::vector<TreeRef> work;
    for (const auto& m : models)
        for (const auto& t : m.trees) work.push_back({&m, &t, server_rng.u64(), user_rng.u64()});

    const mpz_class& M = pk.group().modulus;
    std::vector<mpz_class> r_shares(work.size()), s_shares(work.size());

    util::parallel_for(work.size(), [&](size_t w) {
        const TreeRef& ref = work[w];
        util::Rng srv_rng(ref.server_seed), usr_rng(ref.user_seed);
        size_t model_idx = size_t(ref.model - models.data());

        PteUserTree user(sk, seeds[model_idx], ref.tree->tree_index, ref.tree->depth,
                         std::vector<forest::Milli>(x.begin(), x.end()), user_counters);
        PteServerTree server(pk, *ref.tree, input_ctx, server_counters);

        auto blocks = user.input_blocks(usr_rng);
        server.node_values(blocks);
        server.randomize(srv_rng);
        ScBatch batch = server.comparison_round(srv_rng);
        GammaTilde gt = server.gamma_tilde();
        user.compute_path(batch, gt);
        auto request = user.ot_request(usr_rng);
        auto reply = server.ot_respond(request, srv_rng);
        s_shares[w] = user.receive_share(reply);
        r_shares[w] = server.share();
    });

    mpz_class r_total = 0, s_total = 0;
    for (size_t w = 0; w < work.size(); ++w) {
        r_total = (r_total + r_shares[w]) % M;
        s_total = (s_total + s_shares[w]) % M;
    }

    mpz_class sum = pk.group().decode_signed((r_total + s_total) % M);
    OnlineResult out;
    out.total_trees = uint32_t(work.size());
    if (!sum.fits_slong_p()) throw ProtocolAbort("reconstructed sum out of range");
    out.sum_scaled = int64_t(sum.get_si());
    if (out.sum_scaled < 0 || out.sum_scaled > 1000 * int64_t(work.size()))
        throw ProtocolAbort("reconstructed sum out of range");
    out.y = double(out.sum_scaled) / (1000.0 * double(work.size()));
    out.y_display = format_prediction(out.sum_scaled, out.total_trees);
    return out;
}

}  // namespace forestveil::protocol
