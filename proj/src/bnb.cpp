#include "rpstl/bnb.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <queue>
#include <thread>

namespace rpstl {

namespace {

constexpr double kIntTol = 1e-6;

struct Node {
    double bound;
    long seq;
    std::vector<std::pair<int, int>> fixings;  // (binary var, value)
};

struct NodeOrder {
    bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
        if (a->bound != b->bound) return a->bound > b->bound;  // best bound first
        return a->seq > b->seq;
    }
};

struct Shared {
    explicit Shared(const MilpModel& model) : model(model) {
        for (int j = 0; j < model.vars.size(); ++j)
            if (model.vars.all()[j].kind == VarKind::Binary) binaries.push_back(j);
        start = std::chrono::steady_clock::now();
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    const MilpModel& model;
    std::vector<int> binaries;
    std::chrono::steady_clock::time_point start;
    double time_limit = 300.0;
    int total_workers = 1;

    std::mutex mu;
    std::condition_variable cv;
    std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder> open;
    int idle = 0;
    bool finished = false;
    bool hit_time_limit = false;
    bool proof_incomplete = false;
    long next_seq = 1;
    long nodes_explored = 0;
    long pivots = 0;
    bool have_incumbent = false;
    double incumbent_value = 0.0;
    std::vector<double> incumbent_x;
};

class Worker {
  public:
    explicit Worker(const MilpModel& model) : engine_(make_engine(model)), model_(model) {}

    /// LP over the given fixings; resets every binary's bounds first.
    LpStatus activate(const std::vector<int>& binaries,
                      const std::vector<std::pair<int, int>>& fixings) {
        for (int b : binaries) {
            const auto& v = model_.vars.all()[b];
            engine_.set_bounds(b, v.lb, v.ub);
        }
        for (auto [var, val] : fixings) engine_.set_bounds(var, val, val);
        if (cold_) {
            cold_ = false;
            return engine_.solve_primal();
        }
        LpStatus s = engine_.reoptimize_dual();
        if (s == LpStatus::IterLimit) s = engine_.solve_primal();  // rare: start over
        return s;
    }

    SimplexEngine& engine() { return engine_; }

  private:
    static SimplexEngine make_engine(const MilpModel& model) {
        std::vector<double> lb, ub;
        for (const auto& v : model.vars.all()) {
            lb.push_back(v.lb);
            ub.push_back(v.ub);
        }
        std::vector<LpRow> rows;
        rows.reserve(model.rows.size());
        for (const auto& c : model.rows) rows.push_back({c.expr, c.sense, c.rhs});
        return SimplexEngine(model.vars.size(), lb, ub, rows, model.objective);
    }

    SimplexEngine engine_;
    const MilpModel& model_;
    bool cold_ = true;
};

int most_fractional(const std::vector<double>& x, const std::vector<int>& binaries) {
    int pick = -1;
    double best = kIntTol;
    for (int b : binaries) {
        double frac = std::abs(x[b] - std::round(x[b]));
        if (frac > best) {
            best = frac;
            pick = b;
        }
    }
    return pick;
}

void update_incumbent(Shared& sh, double value, std::vector<double> x) {
    if (!sh.have_incumbent || value < sh.incumbent_value - 1e-9) {
        sh.have_incumbent = true;
        sh.incumbent_value = value;
        sh.incumbent_x = std::move(x);
    }
}

/// LP-guided rounding dive from the current (fractional) LP optimum: fix the
/// binary closest to integral, reoptimize, repeat. Produces an early
/// incumbent on many models.
void dive(Shared& sh, Worker& w) {
    for (size_t round = 0; round < sh.binaries.size(); ++round) {
        std::vector<double> x = w.engine().solution();
        int pick = -1;
        double best = 2.0;
        for (int cand : sh.binaries) {
            double frac = std::abs(x[cand] - std::round(x[cand]));
            if (frac > kIntTol && frac < best) {
                best = frac;
                pick = cand;
            }
        }
        if (pick == -1) {
            std::lock_guard<std::mutex> lk(sh.mu);
            update_incumbent(sh, w.engine().objective_value(), w.engine().solution());
            return;
        }
        int val = static_cast<int>(std::round(x[pick]));
        w.engine().set_bounds(pick, val, val);
        if (w.engine().reoptimize_dual() != LpStatus::Optimal) return;
    }
}

void worker_main(Shared& sh, std::unique_ptr<Worker> w) {
    if (!w) w = std::make_unique<Worker>(sh.model);
    std::unique_lock<std::mutex> lk(sh.mu);
    for (;;) {
        if (sh.finished || sh.hit_time_limit) return;
        if (sh.open.empty()) {
            ++sh.idle;
            if (sh.idle == sh.total_workers) {
                sh.finished = true;
                sh.cv.notify_all();
                return;
            }
            sh.cv.wait(lk);
            --sh.idle;
            continue;
        }
        std::shared_ptr<Node> node = sh.open.top();
        sh.open.pop();
        if (sh.have_incumbent && node->bound >= sh.incumbent_value - 1e-9) continue;
        ++sh.nodes_explored;
        bool timeout = sh.elapsed() > sh.time_limit;
        if (timeout) {
            sh.hit_time_limit = true;
            sh.cv.notify_all();
            return;
        }
        lk.unlock();

        long pivots_before = w->engine().pivot_count();
        LpStatus s = w->activate(sh.binaries, node->fixings);
        double value = 0.0;
        std::vector<double> x;
        int frac = -1;
        if (s == LpStatus::Optimal) {
            value = w->engine().objective_value();
            x = w->engine().solution();
            frac = most_fractional(x, sh.binaries);
        }

        lk.lock();
        sh.pivots += w->engine().pivot_count() - pivots_before;
        if (s == LpStatus::IterLimit) {
            sh.proof_incomplete = true;
            continue;
        }
        if (s != LpStatus::Optimal) continue;  // pruned by infeasibility
        if (sh.have_incumbent && value >= sh.incumbent_value - 1e-9) continue;
        if (frac == -1) {
            update_incumbent(sh, value, std::move(x));
            continue;
        }
        for (int val = 0; val <= 1; ++val) {
            auto child = std::make_shared<Node>();
            child->bound = value;
            child->seq = sh.next_seq++;
            child->fixings = node->fixings;
            child->fixings.emplace_back(frac, val);
            sh.open.push(std::move(child));
        }
        sh.cv.notify_all();
    }
}

}  // namespace

Solution solve(const MilpModel& model, const SolveOptions& opts) {
    Shared sh(model);
    sh.time_limit = opts.time_limit;

    Solution out;
    if (model.trivially_infeasible) {
        out.status = SolveStatus::Infeasible;
        return out;
    }

    auto root = std::make_unique<Worker>(model);
    LpStatus rs = root->activate(sh.binaries, {});
    sh.pivots = root->engine().pivot_count();
    sh.nodes_explored = 1;
    auto finish = [&](SolveStatus st) {
        out.status = st;
        out.stats.nodes = sh.nodes_explored;
        out.stats.lp_pivots = sh.pivots;
        out.stats.wall_seconds = sh.elapsed();
        return out;
    };
    if (rs == LpStatus::Unbounded) return finish(SolveStatus::Unbounded);
    if (rs == LpStatus::Infeasible) return finish(SolveStatus::Infeasible);
    if (rs == LpStatus::IterLimit) return finish(SolveStatus::TimeLimit);

    double root_value = root->engine().objective_value();
    std::vector<double> root_x = root->engine().solution();
    int frac = most_fractional(root_x, sh.binaries);
    if (frac == -1) {
        out.x = root_x;
        out.objective = root_value;
        return finish(SolveStatus::Optimal);
    }
    if (opts.dive) {
        long before = root->engine().pivot_count();
        dive(sh, *root);
        sh.pivots += root->engine().pivot_count() - before;
    }

    for (int val = 0; val <= 1; ++val) {
        auto child = std::make_shared<Node>();
        child->bound = root_value;
        child->seq = sh.next_seq++;
        child->fixings = {{frac, val}};
        sh.open.push(std::move(child));
    }

    sh.total_workers = std::max(1, opts.workers);
    if (sh.total_workers == 1) {
        worker_main(sh, std::move(root));
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < sh.total_workers; ++i) {
            std::unique_ptr<Worker> w = i == 0 ? std::move(root) : nullptr;
            pool.emplace_back(worker_main, std::ref(sh), std::move(w));
        }
        for (auto& t : pool) t.join();
    }

    if (sh.have_incumbent) {
        out.x = sh.incumbent_x;
        out.objective = sh.incumbent_value;
        bool proven = !sh.hit_time_limit && !sh.proof_incomplete;
        return finish(proven ? SolveStatus::Optimal : SolveStatus::TimeLimit);
    }
    return finish(sh.hit_time_limit || sh.proof_incomplete ? SolveStatus::TimeLimit
                                                           : SolveStatus::Infeasible);
}

}  // namespace rpstl
