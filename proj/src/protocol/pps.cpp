// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/protocol/pps.hpp"

#include "forestveil/util/serial.hpp"

namespace forestveil::protocol {

PpsResult pps_score(const forest::RandomForest& rf, const lhe::SecretKey& client_sk,
                    std::span<const forest::Milli> x, util::Rng& provider_rng,
                    util::Rng& client_rng, const ScParams& params) {
    if (rf.trees.empty()) throw ProtocolError("empty forest");
    const lhe::PublicKey& pk = client_sk.public_key();
    const mpz_class& M = pk.group().modulus;

    PpsResult out;
    out.total_trees = uint32_t(rf.trees.size());

    // Step 1: the client submits its encrypted input.
    std::vector<lhe::Ciphertext> enc_input;
    enc_input.reserve(x.size());
    for (forest::Milli v : x)
        enc_input.push_back(lhe::encrypt_with_sk(client_sk, mpz_class(v), client_rng));
    out.stats.input_ciphertexts = enc_input.size();

    mpz_class r_total = 0, s_total = 0;
    for (const forest::DecisionTree& tree : rf.trees) {
        size_t nodes = tree.node_count();

        // 2a: randomization (the provider knows the tree in the clear).
        std::vector<int8_t> gamma(nodes);
        for (auto& g : gamma) g = provider_rng.sign();
        forest::RandomizedTree rnd = forest::randomize_tree(tree, gamma);

        // 2b: node values and secure comparison. N'_i comes from one plain
        // addition of the negated threshold onto the encrypted feature.
        std::vector<int8_t> alphas(nodes), betas(nodes);
        ScBatch batch;
        batch.blinded.reserve(nodes);
        for (size_t p = 0; p < nodes; ++p) {
            const forest::SplittingNode& nd = rnd.tree.nodes()[p];
            if (size_t(nd.feature) >= enc_input.size())
                throw ProtocolError("input dimension mismatch");
            lhe::Ciphertext node_val =
                lhe::add_plain(pk, enc_input[size_t(nd.feature)], mpz_class(-nd.threshold));
            ScPart1Result res = sc_party1(pk, node_val, params, provider_rng);
            alphas[p] = res.alpha;
            batch.blinded.push_back(std::move(res.blinded));
        }
        out.stats.comparison_ciphertexts += nodes;
        for (size_t p = 0; p < nodes; ++p) betas[p] = sc_party2(client_sk, batch.blinded[p]);

        // 2c: path computation at the client.
        GammaTilde gt;
        gt.signs.resize(nodes);
        for (size_t p = 0; p < nodes; ++p) gt.signs[p] = int8_t(gamma[p] * alphas[p]);
        auto polys = forest::path_polynomials(tree.depth());
        size_t leaf;
        try {
            leaf = forest::unique_nonzero_leaf(polys, betas, gt.signs);
        } catch (const forest::ForestError& e) {
            throw ProtocolAbort(e.what());
        }

        // 2d: plaintext-masked labels through the transfer.
        mpz_class r_j = provider_rng.below(M);
        std::vector<Bytes> strings;
        strings.reserve(tree.leaf_count());
        for (size_t i = 0; i < tree.leaf_count(); ++i) {
            mpz_class masked = (mpz_class(rnd.tree.leaves()[i]) - r_j) % M;
            if (sgn(masked) < 0) masked += M;
            util::ByteWriter w;
            w.mpz_fixed(masked, pk.element_bytes());
            strings.push_back(w.take());
        }
        crypto::OtReceiver receiver(size_t(tree.depth()), leaf, client_rng);
        crypto::OtSenderMsg reply = crypto::ot_send(receiver.message(), strings, provider_rng);
        out.stats.transfer_payloads += strings.size();

        Bytes payload = receiver.finish(reply);
        util::ByteReader rd(payload);
        mpz_class s_j = rd.mpz(pk.element_bytes());
        rd.expect_end();

        r_total = (r_total + r_j) % M;
        s_total = (s_total + s_j) % M;
    }

    // Step 3: the provider reveals the sum of its shares.
    mpz_class sum = pk.group().decode_signed((r_total + s_total) % M);
    if (!sum.fits_slong_p()) throw ProtocolAbort("reconstructed sum out of range");
    out.sum_scaled = int64_t(sum.get_si());
    if (out.sum_scaled < 0 || out.sum_scaled > 1000 * int64_t(rf.trees.size()))
        throw ProtocolAbort("reconstructed sum out of range");
    out.y = double(out.sum_scaled) / (1000.0 * double(rf.trees.size()));
    return out;
}

}  // namespace forestveil::protocol
