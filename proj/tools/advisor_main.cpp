// Command-line front end: train / eval / build-graph / recommend /
// gap-report / gen-data. Exit codes: 0 success, 1 validation or domain
// error, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <healthadvisor/advisor.hpp>

namespace ha = healthadvisor;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ha::ValidationError("cannot write file: " + path.string());
    out << content;
    out.flush();
    if (!out) throw ha::ValidationError("cannot write file: " + path.string());
}

ha::SynonymMap load_synonyms_opt(const std::string& path) {
    if (path.empty()) return {};
    return ha::load_synonyms_csv(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HealthAdvisor: categorical risk prediction and wearable recommendation"};
    app.require_subcommand(1);

    std::string train_data, train_out;
    ha::TreeConfig tree_config;
    auto* train = app.add_subcommand("train", "Train the decision-tree risk model");
    train->add_option("--data", train_data, "training CSV")->required();
    train->add_option("--out", train_out, "model file to write")->required();
    train->add_option("--max-depth", tree_config.max_depth, "maximum tree depth");
    train->add_option("--min-gain", tree_config.min_gain, "minimum gain required to split");
    train->add_flag("--laplace", tree_config.laplace, "Laplace-smooth leaf distributions");

    std::string eval_data, eval_model, eval_baseline;
    auto* eval = app.add_subcommand("eval", "Evaluate a model on labeled data");
    eval->add_option("--data", eval_data, "labeled CSV")->required();
    eval->add_option("--model", eval_model, "model file")->required();
    eval->add_option("--baseline", eval_baseline, "evaluate a baseline instead (oner)")
        ->check(CLI::IsMember({"oner"}));

    std::string bg_corpus, bg_rules, bg_catalog, bg_out, bg_synonyms;
    double bg_threshold = 0.5;
    auto* build_graph_cmd =
        app.add_subcommand("build-graph", "Extract the concept graph from a corpus");
    build_graph_cmd->add_option("--corpus", bg_corpus, "directory of text documents")
        ->required();
    build_graph_cmd->add_option("--rules", bg_rules, "entity rules JSON")->required();
    build_graph_cmd->add_option("--catalog", bg_catalog, "wearable catalog CSV")->required();
    build_graph_cmd->add_option("--out", bg_out, "graph file to write")->required();
    build_graph_cmd->add_option("--synonyms", bg_synonyms, "token synonyms CSV");
    build_graph_cmd->add_option("--threshold", bg_threshold, "catalog match threshold");

    std::string rec_model, rec_graph, rec_catalog, rec_profile, rec_out;
    std::string rec_aliases, rec_synonyms, rec_counters;
    ha::PipelineConfig pipeline_config;
    auto* recommend_cmd =
        app.add_subcommand("recommend", "Recommend wearables for profiles");
    recommend_cmd->add_option("--model", rec_model, "model file")->required();
    recommend_cmd->add_option("--graph", rec_graph, "graph file")->required();
    recommend_cmd->add_option("--catalog", rec_catalog, "wearable catalog CSV")->required();
    recommend_cmd->add_option("--profile", rec_profile, "profiles CSV")->required();
    recommend_cmd->add_option("--out", rec_out, "recommendation document to write")
        ->required();
    recommend_cmd->add_option("--aliases", rec_aliases, "condition alias CSV");
    recommend_cmd->add_option("--synonyms", rec_synonyms, "token synonyms CSV");
    recommend_cmd->add_option("--counters", rec_counters,
                              "demand counter file to update (created if missing)");
    recommend_cmd->add_option("--top-k", pipeline_config.top_k, "risks to keep per profile");
    recommend_cmd->add_option("--min-probability", pipeline_config.min_probability,
                              "minimum risk probability");
    recommend_cmd->add_option("--threshold", pipeline_config.match_threshold,
                              "catalog match threshold");

    std::string gap_graph, gap_counters;
    auto* gap = app.add_subcommand("gap-report", "List measurements no wearable covers");
    gap->add_option("--graph", gap_graph, "graph file")->required();
    gap->add_option("--counters", gap_counters, "demand counter file")->required();

    std::uint32_t gen_seed = 0;
    std::size_t gen_rows = 0, gen_classes = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-data", "Generate a synthetic training CSV");
    gen->add_option("--seed", gen_seed, "random seed")->required();
    gen->add_option("--rows", gen_rows, "number of rows")->required();
    gen->add_option("--classes", gen_classes, "number of condition classes")->required();
    gen->add_option("--out", gen_out, "CSV file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (train->parsed()) {
            ha::TrainingData data = ha::load_training_csv(train_data);
            ha::DecisionTree tree = ha::train_tree(data.dataset, tree_config);
            tree.save(train_out);
        } else if (eval->parsed()) {
            ha::TrainingData data = ha::load_training_csv(eval_data);
            ha::EvalMetrics metrics;
            if (eval_baseline == "oner") {
                metrics = ha::evaluate(ha::train_oner(data.dataset), data.dataset);
            } else {
                metrics = ha::evaluate(ha::DecisionTree::load(eval_model), data.dataset);
            }
            std::cout << "accuracy=" << ha::format_double(metrics.accuracy) << "\n"
                      << "rmse=" << ha::format_double(metrics.rmse) << "\n";
        } else if (build_graph_cmd->parsed()) {
            ha::RuleSet rules = ha::RuleSet::load(bg_rules);
            ha::WearableCatalog catalog =
                ha::WearableCatalog::load(bg_catalog, load_synonyms_opt(bg_synonyms));
            catalog.add_wearable_rules(rules);
            ha::ConceptGraph graph = ha::build_graph(ha::load_corpus_dir(bg_corpus), rules);
            graph = ha::extend_graph(graph, catalog, bg_threshold);
            write_file(bg_out, graph.export_edge_list());
        } else if (recommend_cmd->parsed()) {
            pipeline_config.validate();
            ha::DecisionTree tree = ha::DecisionTree::load(rec_model);
            ha::ConceptGraph graph = ha::ConceptGraph::load(rec_graph);
            ha::WearableCatalog catalog =
                ha::WearableCatalog::load(rec_catalog, load_synonyms_opt(rec_synonyms));
            ha::AliasTable aliases;
            if (!rec_aliases.empty()) aliases = ha::AliasTable::load(rec_aliases);
            ha::ProfileBatch batch = ha::load_profiles_csv(rec_profile);
            ha::DemandCounters counters;
            const bool track_demand = !rec_counters.empty();
            if (track_demand) counters = ha::DemandCounters::load_or_empty(rec_counters);
            auto recommendations =
                ha::batch_recommend(batch, tree, graph, catalog, aliases, pipeline_config,
                                    track_demand ? &counters : nullptr);
            write_file(rec_out, ha::export_recommendations(recommendations));
            if (track_demand) counters.save(rec_counters);
        } else if (gap->parsed()) {
            ha::ConceptGraph graph = ha::ConceptGraph::load(gap_graph);
            ha::DemandCounters counters = ha::DemandCounters::load(gap_counters);
            std::cout << ha::export_gap_report(ha::gap_report(graph, counters));
        } else if (gen->parsed()) {
            ha::TrainingData data = ha::synthetic::generate(gen_seed, gen_rows, gen_classes);
            ha::write_training_csv(gen_out, data);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
