#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "isle/emit.hpp"
#include "isle/experiment.hpp"
#include "isle/stats.hpp"
#include "isle/verify.hpp"

using namespace isle;

namespace {

ExperimentSpec small_sorting_spec() {
    ExperimentSpec spec;
    spec.problem = ProblemKind::sorting;
    spec.measure = SortMeasure::ham;
    spec.size = 6;
    spec.algorithm = MutationScheme::ea;
    spec.topology = TopologyKind::complete;
    spec.mu_list = {1, 2, 4};
    spec.tau = 1;
    spec.replications = 8;
    spec.seed = 101;
    return spec;
}

}  // namespace

TEST_CASE("config text parsing") {
    const std::string text = R"(
# eulerian experiment
problem = eulerian
instance = double-cycle
operator = unrestricted
size = 12
algorithm = rls
topology = ring
mu = 1, 2, 8
tau = never
replications = 5
seed = 99
max_generations = 12345
output = out.csv
)";
    const ExperimentSpec spec = parse_experiment_text(text);
    CHECK(spec.problem == ProblemKind::eulerian);
    CHECK(spec.instance == "double-cycle");
    CHECK(spec.euler_operator == EulerOperator::unrestricted);
    CHECK(spec.size == 12);
    CHECK(spec.algorithm == MutationScheme::rls);
    CHECK(spec.mu_list == std::vector<std::uint32_t>{1, 2, 8});
    CHECK(spec.tau == kNeverMigrate);
    CHECK(spec.replications == 5);
    CHECK(spec.seed == 99);
    CHECK(spec.max_generations == 12345);
    CHECK(spec.output == "out.csv");
    spec.validate();

    CHECK_THROWS(parse_experiment_text("nonsense = 1\n"));
    CHECK_THROWS(parse_experiment_text("problem sorting\n"));
}

TEST_CASE("validation names the offending field") {
    ExperimentSpec spec = small_sorting_spec();
    spec.replications = 0;
    CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("replications"),
                         std::invalid_argument);
    spec = small_sorting_spec();
    spec.seed.reset();
    CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("seed"), std::invalid_argument);
    spec = small_sorting_spec();
    spec.mu_list.clear();
    CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("mu"), std::invalid_argument);
    spec = small_sorting_spec();
    spec.topology = TopologyKind::torus;
    spec.mu_list = {1, 3};
    CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("torus"), std::invalid_argument);
}

TEST_CASE("experiments are deterministic and worker-count independent") {
    const ExperimentSpec spec = small_sorting_spec();
    const ExperimentResult a = run_experiment(spec, 1);
    const ExperimentResult b = run_experiment(spec, 4);
    CHECK(a.rows == b.rows);
    REQUIRE(a.cells.size() == 3);
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].stats.mean == b.cells[i].stats.mean);
        CHECK(a.cells[i].stats.median == b.cells[i].stats.median);
    }
}

TEST_CASE("cell results are keyed by content, not mu-list position") {
    ExperimentSpec spec = small_sorting_spec();
    const ExperimentResult forward = run_experiment(spec, 2);
    spec.mu_list = {4, 1, 2};
    const ExperimentResult permuted = run_experiment(spec, 2);
    for (const auto& cell : forward.cells) {
        for (const auto& other : permuted.cells) {
            if (cell.mu == other.mu) {
                CHECK(cell.stats.mean == other.stats.mean);
                CHECK(cell.stats.count == other.stats.count);
            }
        }
    }
    // Raw rows match one-to-one per (mu, replication).
    for (const auto& row : forward.rows) {
        bool found = false;
        for (const auto& other : permuted.rows) {
            if (other.mu == row.mu && other.replication == row.replication) {
                CHECK(other == row);
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("replications=1 table equals the single run record") {
    ExperimentSpec spec = small_sorting_spec();
    spec.mu_list = {2};
    spec.replications = 1;
    const ExperimentResult result = run_experiment(spec);
    REQUIRE(result.rows.size() == 1);
    const auto problem = build_problem(spec);
    RunConfig config;
    config.mu = 2;
    config.tau = 1;
    config.topology = build_topology(spec, 2);
    config.seed = cell_seed(spec, 2);
    config.replication = 0;
    const RunRecord record = run(config, *problem);
    CHECK(result.rows[0].parallel_time == record.parallel_time);
    CHECK(result.cells[0].stats.mean == double(record.parallel_time));
}

TEST_CASE("speedup table") {
    ExperimentResult result;
    result.cells.push_back({1, summarize(std::vector<double>{100, 100}, 0)});
    result.cells.push_back({4, summarize(std::vector<double>{25, 25}, 0)});
    result.cells.push_back({8, summarize(std::vector<double>{50, 50}, 0)});
    const auto rows = speedup_table(result);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].speedup == doctest::Approx(1.0));
    CHECK(rows[0].efficiency == doctest::Approx(1.0));
    CHECK(rows[1].speedup == doctest::Approx(4.0));
    CHECK(rows[1].efficiency == doctest::Approx(1.0));
    CHECK(rows[2].speedup == doctest::Approx(2.0));
    CHECK(rows[2].efficiency == doctest::Approx(0.25));

    ExperimentResult missing;
    missing.cells.push_back({2, summarize(std::vector<double>{10}, 0)});
    CHECK_THROWS(speedup_table(missing));
}

TEST_CASE("summary stats exclude capped runs") {
    const SummaryStats stats = summarize(std::vector<double>{2, 4, 6, 8}, 3);
    CHECK(stats.count == 4);
    CHECK(stats.cap_hits == 3);
    CHECK(stats.mean == doctest::Approx(5.0));
    CHECK(stats.median == doctest::Approx(5.0));
    const SummaryStats empty = summarize(std::vector<double>{}, 2);
    CHECK(empty.count == 0);
    CHECK(empty.cap_hits == 2);
}

TEST_CASE("csv emission and round trip") {
    CHECK(to_csv({}) == std::string(kCsvHeader) + "\n");

    ResultRow row;
    row.problem = "eulerian";
    row.measure = "-";
    row.n_or_m = 16;
    row.topology = "ring";
    row.mu = 8;
    row.tau = "never";
    row.op = "unrestricted";
    row.replication = 3;
    row.seed = 123456789;
    row.parallel_time = 4242;
    row.capped = false;
    ResultRow capped = row;
    capped.replication = 4;
    capped.parallel_time = kInfiniteTime;
    capped.capped = true;

    const std::vector<ResultRow> rows = {row, capped};
    const std::string text = to_csv(rows);
    CHECK(parse_result_csv(text) == rows);

    const auto path = std::filesystem::temp_directory_path() / "isle_rows.csv";
    emit_csv(rows, path);
    CHECK(load_result_csv(path) == rows);
    std::filesystem::remove(path);
}

TEST_CASE("svg chart contains one polyline per series") {
    const Series series{"mean", {{1.0, 100.0}, {8.0, 20.0}}};
    const std::string svg = to_svg({series}, SvgOptions{"title", "mu", "time", true, true});
    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == 1);
    // exactly two coordinate pairs on the polyline
    const std::size_t points = svg.find("points=\"");
    REQUIRE(points != std::string::npos);
    const std::size_t end = svg.find('"', points + 8);
    const std::string coords = svg.substr(points + 8, end - points - 8);
    CHECK(std::count(coords.begin(), coords.end(), ',') == 2);
    CHECK(std::count(coords.begin(), coords.end(), ' ') == 1);
}

TEST_CASE("welch test separates clearly different samples") {
    std::vector<double> slow, fast;
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        slow.push_back(1000.0 + double(rng.below(200)));
        fast.push_back(500.0 + double(rng.below(200)));
    }
    const WelchResult result = welch_t_test(slow, fast);
    CHECK(result.t > 10.0);
    CHECK(result.p_greater < 1e-6);
    const WelchResult reverse = welch_t_test(fast, slow);
    CHECK(reverse.p_greater > 0.999);

    // Student CDF sanity: symmetric, increasing.
    CHECK(student_cdf(0.0, 10.0) == doctest::Approx(0.5));
    CHECK(student_cdf(1.812, 10.0) == doctest::Approx(0.95).epsilon(1e-3));
    CHECK(student_cdf(-1.812, 10.0) == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("probe decision experiment is deterministic and near two thirds") {
    const auto a = probe_decision_experiment(12, 300, 777, 1);
    const auto b = probe_decision_experiment(12, 300, 777, 4);
    CHECK(a.opposite_cycle == b.opposite_cycle);
    CHECK(a.same_cycle == b.same_cycle);
    CHECK(a.not_applicable == b.not_applicable);
    CHECK(a.undecided == 0);
    CHECK(a.frequency > 0.5);
    CHECK(a.frequency < 0.85);
    CHECK_THROWS(probe_decision_experiment(12, 0, 1));
}

TEST_CASE("criterion registry") {
    CHECK(criterion_names().size() == 12);
    CHECK_THROWS(run_criterion("no-such-criterion"));
    // The two cheap formula criteria run in well under a second.
    CHECK(run_criterion("rowe", 1).pass);
    CHECK(run_criterion("bounds", 1).pass);
}
