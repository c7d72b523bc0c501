#include "rearrange/buffers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rearrange {

namespace {

Pose random_contained_pose(const Shape &shape, const Workspace &ws, Rng &rng) {
    const double theta = shape.is_disc() ? 0.0 : rng.uniform(0.0, 2.0 * kPi);
    double hx, hy;
    shape.half_extents(theta, hx, hy);
    return Pose(rng.uniform(hx, ws.width - hx), rng.uniform(hy, ws.height - hy), theta);
}

bool clear_of_constraints(ObjectId object, const Pose &pose, const ConstraintSet &constraints, const Instance &inst,
                          CheckCounter &counter) {
    const Shape &shape = inst.shape(object);
    if (!contained(shape, pose, inst.workspace))
        return false;
    for (const Obstacle &ob : constraints[static_cast<std::size_t>(object)])
        if (collides(shape, pose, ob.shape, ob.pose, counter))
            return false;
    return true;
}

bool clear_of_buffers(ObjectId object, const Pose &pose, const BufferAssignment &buffers,
                      const std::vector<ObjectId> &ids, const Instance &inst, CheckCounter &counter) {
    for (ObjectId other : ids) {
        if (other == object)
            continue;
        const auto &b = buffers[static_cast<std::size_t>(other)];
        if (b && collides(inst.shape(object), pose, inst.shape(other), *b, counter))
            return false;
    }
    return true;
}

// Marks which kept buffers survive: each must satisfy its constraints and clear
// the buffers kept before it.
std::vector<ObjectId> keep_valid(const std::vector<ObjectId> &need, const ConstraintSet &constraints,
                                 const BufferAssignment &keep, const Instance &inst, CheckCounter &counter,
                                 std::vector<ObjectId> &redo) {
    std::vector<ObjectId> kept;
    for (ObjectId o : need) {
        const auto &b = keep[static_cast<std::size_t>(o)];
        if (b && clear_of_constraints(o, *b, constraints, inst, counter) &&
            clear_of_buffers(o, *b, keep, kept, inst, counter))
            kept.push_back(o);
        else
            redo.push_back(o);
    }
    return kept;
}

} // namespace

bool buffer_ok(ObjectId object, const Pose &pose, const ConstraintSet &constraints, const BufferAssignment &others,
               const std::vector<ObjectId> &other_ids, const Instance &inst, CheckCounter &counter) {
    return clear_of_constraints(object, pose, constraints, inst, counter) &&
           clear_of_buffers(object, pose, others, other_ids, inst, counter);
}

GenerationResult sample_buffers(const std::vector<ObjectId> &need, const ConstraintSet &constraints,
                                const BufferAssignment &keep, const Instance &inst, Rng &rng, CheckCounter &counter) {
    GenerationResult out{true, keep};
    std::vector<ObjectId> redo;
    std::vector<ObjectId> decided = keep_valid(need, constraints, keep, inst, counter, redo);
    for (ObjectId o : redo) {
        bool found = false;
        for (int attempt = 0; attempt < kSamplesPerBuffer && !found; ++attempt) {
            const Pose p = random_contained_pose(inst.shape(o), inst.workspace, rng);
            if (buffer_ok(o, p, constraints, out.buffers, decided, inst, counter)) {
                out.buffers[static_cast<std::size_t>(o)] = p;
                found = true;
            }
        }
        if (!found) {
            out.success = false;
            return out;
        }
        decided.push_back(o);
    }
    return out;
}

GenerationResult optimize_buffers(const std::vector<ObjectId> &need, const ConstraintSet &constraints,
                                  const BufferAssignment &keep, const Instance &inst, Rng &rng, CheckCounter &counter,
                                  const OptimizerSettings &settings) {
    for (ObjectId o : need) {
        if (!inst.shape(o).is_disc())
            throw UnsupportedShape("buffer optimization supports discs only");
        for (const Obstacle &ob : constraints[static_cast<std::size_t>(o)])
            if (!ob.shape.is_disc())
                throw UnsupportedShape("buffer optimization supports discs only");
    }

    GenerationResult out{true, keep};
    std::vector<ObjectId> redo;
    const std::vector<ObjectId> kept = keep_valid(need, constraints, keep, inst, counter, redo);
    if (redo.empty())
        return out;

    struct Fixed {
        double x, y, r;
    };
    const std::size_t m = redo.size();
    std::vector<double> radius(m);
    std::vector<std::vector<Fixed>> fixed(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto o = static_cast<std::size_t>(redo[i]);
        radius[i] = inst.shape(redo[i]).as_disc().radius;
        for (const Obstacle &ob : constraints[o])
            fixed[i].push_back({ob.pose.x, ob.pose.y, ob.shape.as_disc().radius});
        for (ObjectId k : kept) {
            const Pose &b = *keep[static_cast<std::size_t>(k)];
            fixed[i].push_back({b.x, b.y, inst.shape(k).as_disc().radius});
        }
    }
    const Workspace &ws = inst.workspace;
    std::vector<double> x(m), y(m), gx(m), gy(m);

    // accumulates the gradient of the squared violations; returns the worst violation
    auto evaluate = [&]() {
        double worst = 0.0;
        std::fill(gx.begin(), gx.end(), 0.0);
        std::fill(gy.begin(), gy.end(), 0.0);
        auto push_apart = [&](std::size_t i, double dx, double dy, double need_dist, double share) {
            double d = std::hypot(dx, dy);
            const double v = need_dist + settings.margin - d;
            if (v <= 0.0)
                return;
            worst = std::max(worst, v);
            if (d < 1e-12) {
                dx = 1.0;
                dy = 0.0;
                d = 1.0;
            }
            // d(v^2)/dx_i = -2 v (dx / d)
            gx[i] -= share * 2.0 * v * dx / d;
            gy[i] -= share * 2.0 * v * dy / d;
        };
        for (std::size_t i = 0; i < m; ++i) {
            for (const Fixed &f : fixed[i])
                push_apart(i, x[i] - f.x, y[i] - f.y, radius[i] + f.r, 1.0);
            for (std::size_t j = i + 1; j < m; ++j) {
                push_apart(i, x[i] - x[j], y[i] - y[j], radius[i] + radius[j], 1.0);
                push_apart(j, x[j] - x[i], y[j] - y[i], radius[i] + radius[j], 1.0);
            }
        }
        return worst;
    };
    auto project = [&](std::size_t i) {
        x[i] = std::clamp(x[i], radius[i], std::max(radius[i], ws.width - radius[i]));
        y[i] = std::clamp(y[i], radius[i], std::max(radius[i], ws.height - radius[i]));
    };

    for (int restart = 0; restart < settings.restarts; ++restart) {
        for (std::size_t i = 0; i < m; ++i) {
            const auto &warm = keep[static_cast<std::size_t>(redo[i])];
            if (restart == 0 && warm) {
                x[i] = warm->x;
                y[i] = warm->y;
            } else {
                x[i] = rng.uniform(radius[i], ws.width - radius[i]);
                y[i] = rng.uniform(radius[i], ws.height - radius[i]);
            }
            project(i);
        }
        double worst = evaluate();
        for (int it = 0; it < settings.iterations && worst >= settings.tolerance; ++it) {
            for (std::size_t i = 0; i < m; ++i) {
                x[i] -= settings.step * gx[i];
                y[i] -= settings.step * gy[i];
                project(i);
            }
            worst = evaluate();
        }
        if (worst >= settings.tolerance)
            continue;

        // confirm with the exact predicates before accepting
        BufferAssignment candidate = keep;
        std::vector<ObjectId> decided = kept;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            const Pose p(x[i], y[i], 0.0);
            candidate[static_cast<std::size_t>(redo[i])] = p;
            ok = buffer_ok(redo[i], p, constraints, candidate, decided, inst, counter);
            decided.push_back(redo[i]);
        }
        if (ok) {
            out.buffers = std::move(candidate);
            return out;
        }
    }
    out.success = false;
    return out;
}

AllocationResult allocate(const PrimitivePlan &plan, const Arrangement &from, const Arrangement &to,
                          const Instance &inst, BufferBackend backend, Rng &rng, CheckCounter &counter) {
    const std::size_t n = inst.size();
    if (backend == BufferBackend::Optimization && !inst.all_discs())
        backend = BufferBackend::Sampling;

    enum class Place { Current, Buffer, Target };
    std::vector<Place> place(n, Place::Current);
    std::vector<char> ever_buffered(n, 0);
    std::vector<ObjectId> parked;
    ConstraintSet constraints(n);

    AllocationResult result;
    result.buffers.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        result.buffers[i] = random_contained_pose(inst.objects[i].shape, inst.workspace, rng);

    auto pose_now = [&](std::size_t j) { return place[j] == Place::Target ? to[j] : from[j]; };

    for (std::size_t step = 0; step < plan.actions.size(); ++step) {
        const auto [obj, move] = plan.actions[step];
        const auto i = static_cast<std::size_t>(obj);
        const Obstacle goal_obstacle{inst.objects[i].shape, to[i]};
        std::vector<ObjectId> need = parked;

        if (move == ActionKind::SB) {
            need.push_back(obj);
            constraints[i].clear();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && place[j] != Place::Buffer)
                    constraints[i].push_back({inst.objects[j].shape, pose_now(j)});
        } else if (move == ActionKind::BG) {
            need.erase(std::remove(need.begin(), need.end(), obj), need.end());
            // the leaving buffer is final now; earlier companions keep avoiding it
            const Obstacle old_buffer{inst.objects[i].shape, *result.buffers[i]};
            for (ObjectId o : need) {
                constraints[static_cast<std::size_t>(o)].push_back(goal_obstacle);
                constraints[static_cast<std::size_t>(o)].push_back(old_buffer);
            }
        } else {
            for (ObjectId o : need)
                constraints[static_cast<std::size_t>(o)].push_back(goal_obstacle);
        }

        GenerationResult gen = backend == BufferBackend::Optimization
                                   ? optimize_buffers(need, constraints, result.buffers, inst, rng, counter)
                                   : sample_buffers(need, constraints, result.buffers, inst, rng, counter);
        if (!gen.success) {
            result.failed_step = step;
            break;
        }
        result.buffers = std::move(gen.buffers);
        if (move == ActionKind::SB) {
            place[i] = Place::Buffer;
            ever_buffered[i] = 1;
            parked.push_back(obj);
        } else {
            place[i] = Place::Target;
            parked.erase(std::remove(parked.begin(), parked.end(), obj), parked.end());
        }
    }
    // a failing eviction never happened, so its object has no buffer either
    for (std::size_t i = 0; i < n; ++i)
        if (!ever_buffered[i])
            result.buffers[i].reset();
    return result;
}

Plan instantiate(const PrimitivePlan &plan, std::size_t steps, const BufferAssignment &buffers,
                 const Arrangement &from, const Arrangement &to) {
    Plan out;
    Arrangement cur = from;
    for (std::size_t k = 0; k < std::min(steps, plan.actions.size()); ++k) {
        const auto [obj, move] = plan.actions[k];
        const auto i = static_cast<std::size_t>(obj);
        const Pose target = move == ActionKind::SB ? *buffers[i] : to[i];
        if (same_pose(cur[i], target))
            continue;
        out.push_back({obj, target, move});
        cur[i] = target;
    }
    return out;
}

} // namespace rearrange
