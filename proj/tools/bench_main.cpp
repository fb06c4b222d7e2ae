// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
//
// Measurement harness: operation-count audits, the hyperparameter sweep, the
// merge-efficacy experiment and wall-clock timing of a full query.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "forestveil/bench/audit.hpp"
#include "forestveil/bench/merge.hpp"
#include "forestveil/bench/stats.hpp"
#include "forestveil/bench/sweep.hpp"
#include "forestveil/bench/synthetic.hpp"
#include "forestveil/forest/train.hpp"
#include "forestveil/protocol/online.hpp"
#include "forestveil/transport/client.hpp"
#include "forestveil/transport/server.hpp"

using namespace forestveil;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

forest::Dataset make_dataset(const std::string& csv, const std::string& synthetic, size_t samples,
                             uint64_t seed) {
    if (!csv.empty()) return forest::load_csv(csv);
    if (synthetic == "blobs") return bench::make_blobs(samples, 12, 1.6, seed);
    if (synthetic == "xor") return bench::make_xor(samples, 4, 0.08, seed);
    throw std::runtime_error("choose --data or --synthetic blobs|xor");
}

int cmd_audit(uint32_t bits, const std::string& out_path) {
    util::Rng rng(7);
    lhe::KeyPair keys = lhe::keygen(bits, rng);
    std::ostringstream csv;
    csv << "kind,n,d,row,expected,actual,pass\n";
    bool ok = true;
    for (size_t n : {2u, 8u, 32u}) {
        for (int d : {1, 3, 6}) {
            bench::PteTranscript t = bench::run_instrumented_pte(keys, n, d, rng);
            for (const auto& row : bench::audit_pte_counts(t)) {
                csv << "pte," << n << ',' << d << ',' << row.name << ',' << row.expected << ','
                    << row.actual << ',' << (row.pass ? 1 : 0) << '\n';
                ok = ok && row.pass;
            }
        }
    }
    for (size_t n : {8u, 57u}) {
        for (int d : {1, 4, 6}) {
            bench::PpsCommAudit a = bench::audit_pps_comm(keys, n, d, rng);
            csv << "pps," << n << ',' << d << ",comm.payloads," << a.expected << ',' << a.measured
                << ',' << (a.pass ? 1 : 0) << '\n';
            ok = ok && a.pass;
        }
    }
    emit(csv.str(), out_path);
    std::fprintf(stderr, "audit: %s\n", ok ? "all rows match" : "MISMATCH");
    return ok ? 0 : 1;
}

int cmd_timing(uint32_t bits, uint32_t trees, int depth, size_t features, uint32_t reps,
               const std::string& out_path) {
    util::Rng rng(11);
    lhe::KeyPair keys = lhe::keygen(bits, rng);
    std::vector<double> enc_s, query_s;
    uint64_t up_bytes = 0, down_bytes = 0;
    for (uint32_t rep = 0; rep < reps; ++rep) {
        forest::RandomForest rf = bench::random_forest(trees, depth, features, rng);
        crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
        auto t0 = std::chrono::steady_clock::now();
        protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 1, rng);
        auto t1 = std::chrono::steady_clock::now();
        enc_s.push_back(std::chrono::duration<double>(t1 - t0).count());

        std::string store = "/tmp/forestveil-bench-" + std::to_string(::getpid()) + "-" +
                            std::to_string(rep);
        transport::ForestServer server({store, "127.0.0.1:0"});
        server.bind();
        server.start();
        transport::upload_model("127.0.0.1", server.port(), keys.pk, model, 1);

        std::vector<forest::Milli> x = bench::random_input(features, rng);
        transport::QueryStats stats;
        t0 = std::chrono::steady_clock::now();
        protocol::OnlineResult res =
            transport::query_predict("127.0.0.1", server.port(), keys.sk, x, &stats);
        t1 = std::chrono::steady_clock::now();
        query_s.push_back(std::chrono::duration<double>(t1 - t0).count());
        up_bytes = stats.bytes_sent;
        down_bytes = stats.bytes_received;
        server.stop();
        (void)res;
    }
    std::ostringstream csv;
    csv << "metric,mean,std\n";
    csv << "model_encryption_s," << bench::mean(enc_s) << ',' << bench::stdev(enc_s) << '\n';
    csv << "query_s," << bench::mean(query_s) << ',' << bench::stdev(query_s) << '\n';
    csv << "query_bytes_sent," << up_bytes << ",0\n";
    csv << "query_bytes_received," << down_bytes << ",0\n";
    emit(csv.str(), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forestveil bench: audits, sweeps and experiments"};
    app.require_subcommand(1);
    std::string out_path, data_csv, synthetic = "xor";
    uint32_t bits = 1024;

    auto* audit = app.add_subcommand("audit", "operation/communication count audit");
    audit->add_option("--bits", bits, "key size")->capture_default_str();
    audit->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* sweep_cmd = app.add_subcommand("sweep", "depth/trees grid search with budget");
    std::vector<int> depths{2, 4, 6, 8, 10, 12};
    std::vector<uint32_t> tree_counts{1, 5, 25, 50, 100, 300};
    uint32_t replicates = 10;
    uint64_t budget = uint64_t(1) << 15;
    size_t samples = 600;
    uint64_t seed = 1;
    sweep_cmd->add_option("--data", data_csv, "CSV dataset (last column = label)");
    sweep_cmd->add_option("--synthetic", synthetic, "blobs|xor")->capture_default_str();
    sweep_cmd->add_option("--samples", samples, "synthetic sample count")->capture_default_str();
    sweep_cmd->add_option("--depths", depths, "depth grid")->capture_default_str();
    sweep_cmd->add_option("--trees", tree_counts, "tree-count grid")->capture_default_str();
    sweep_cmd->add_option("--replicates", replicates, "replicates per cell")
        ->capture_default_str();
    sweep_cmd->add_option("--budget", budget, "cost budget s (m * 2^d <= s)")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", seed, "rng seed")->capture_default_str();
    sweep_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* merge_cmd = app.add_subcommand("merge", "silo vs merge vs pooled experiment");
    uint32_t providers_lo = 2, providers_hi = 6, trees_pp = 50, merge_reps = 50;
    int merge_depth = 8;
    merge_cmd->add_option("--data", data_csv, "CSV dataset (last column = label)");
    merge_cmd->add_option("--synthetic", synthetic, "blobs|xor")->capture_default_str();
    merge_cmd->add_option("--samples", samples, "synthetic sample count")->capture_default_str();
    merge_cmd->add_option("--min-providers", providers_lo)->capture_default_str();
    merge_cmd->add_option("--max-providers", providers_hi)->capture_default_str();
    merge_cmd->add_option("--trees-per-provider", trees_pp)->capture_default_str();
    merge_cmd->add_option("--depth", merge_depth)->capture_default_str();
    merge_cmd->add_option("--replicates", merge_reps)->capture_default_str();
    merge_cmd->add_option("--seed", seed, "rng seed")->capture_default_str();
    merge_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* timing = app.add_subcommand("timing", "wall-clock timing of a full query");
    uint32_t t_trees = 50, t_reps = 5;
    int t_depth = 8;
    size_t t_features = 30;
    timing->add_option("--bits", bits, "key size")->capture_default_str();
    timing->add_option("--trees", t_trees)->capture_default_str();
    timing->add_option("--depth", t_depth)->capture_default_str();
    timing->add_option("--features", t_features)->capture_default_str();
    timing->add_option("--reps", t_reps, "repetitions")->capture_default_str();
    timing->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (audit->parsed()) return cmd_audit(bits, out_path);
        if (sweep_cmd->parsed()) {
            forest::Dataset data = make_dataset(data_csv, synthetic, samples, seed);
            bench::SweepParams p;
            p.depths = depths;
            p.tree_counts = tree_counts;
            p.replicates = replicates;
            p.budget = budget;
            p.seed = seed;
            bench::SweepResult r = bench::sweep(data, p);
            std::ostringstream csv;
            csv << bench::sweep_csv(r);
            csv << "# best,d=" << r.best.depth << ",m=" << r.best.trees
                << ",auc=" << r.best.mean_auc << '\n';
            if (r.best_constrained)
                csv << "# best_constrained,d=" << r.best_constrained->depth
                    << ",m=" << r.best_constrained->trees
                    << ",auc=" << r.best_constrained->mean_auc << '\n';
            emit(csv.str(), out_path);
            return 0;
        }
        if (merge_cmd->parsed()) {
            forest::Dataset data = make_dataset(data_csv, synthetic, samples, seed);
            std::vector<bench::MergeResult> rows;
            for (uint32_t t = providers_lo; t <= providers_hi; ++t) {
                bench::MergeParams p;
                p.providers = t;
                p.trees_per_provider = trees_pp;
                p.depth = merge_depth;
                p.replicates = merge_reps;
                p.seed = seed;
                rows.push_back(bench::merge_experiment(data, p));
            }
            emit(bench::merge_csv(rows), out_path);
            return 0;
        }
        if (timing->parsed()) return cmd_timing(bits, t_trees, t_depth, t_features, t_reps, out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bench: %s\n", e.what());
        return 1;
    }
    return 0;
}
