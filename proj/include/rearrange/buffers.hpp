#pragma once
/**
 * @file
 * @brief Lazy buffer allocation.
 *
 * A primitive plan is replayed step by step. Every object parked in a buffer
 * accumulates the poses it has to stay clear of: the objects that were on the
 * table when it was parked, and every goal pose filled while it waits. After
 * each step the buffers are regenerated; buffers that still satisfy their
 * constraints are kept, so a buffer chosen early can move if a later step
 * invalidates it. The final assignment therefore applies retroactively: the
 * object goes straight to its last buffer.
 */

#include "rearrange/model.hpp"
#include "rearrange/primitive.hpp"
#include "rearrange/random.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rearrange {

enum class BufferBackend { Sampling, Optimization };

struct Obstacle {
    Shape shape;
    Pose pose;
};

/// Buffer pose per object id; empty for objects without a buffer.
using BufferAssignment = std::vector<std::optional<Pose>>;

/// Obstacles each buffered object must avoid, indexed by object id.
using ConstraintSet = std::vector<std::vector<Obstacle>>;

inline constexpr int kSamplesPerBuffer = 100;

struct OptimizerSettings {
    int restarts = 20;
    int iterations = 500;
    double step = 0.05;
    double tolerance = 1e-7;
    /// Extra clearance the optimizer aims for so accepted buffers are strictly
    /// collision-free under the contact tolerance.
    double margin = 1e-6;
};

struct AllocationResult {
    BufferAssignment buffers;
    /// Index of the primitive action where generation failed; empty on success.
    std::optional<std::size_t> failed_step;

    bool success() const { return !failed_step.has_value(); }
};

struct GenerationResult {
    bool success = false;
    BufferAssignment buffers;
};

class UnsupportedShape : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// True iff `pose` is a usable buffer for `object`: inside the workspace and
/// clear of its constraints and of the buffers in `others`.
bool buffer_ok(ObjectId object, const Pose &pose, const ConstraintSet &constraints, const BufferAssignment &others,
               const std::vector<ObjectId> &other_ids, const Instance &inst, CheckCounter &counter);

/// Sampling back-end: buffers are drawn one at a time, uniformly over contained
/// poses, and earlier buffers become obstacles for later ones.
GenerationResult sample_buffers(const std::vector<ObjectId> &need, const ConstraintSet &constraints,
                                const BufferAssignment &keep, const Instance &inst, Rng &rng, CheckCounter &counter);

/// Optimization back-end for discs: squared constraint violations minimised by
/// projected gradient descent from random restarts.
GenerationResult optimize_buffers(const std::vector<ObjectId> &need, const ConstraintSet &constraints,
                                  const BufferAssignment &keep, const Instance &inst, Rng &rng, CheckCounter &counter,
                                  const OptimizerSettings &settings = {});

/// Allocates buffers for a primitive plan moving objects from `from` to `to`.
/// Falls back to sampling when optimization is requested for non-disc objects.
AllocationResult allocate(const PrimitivePlan &plan, const Arrangement &from, const Arrangement &to,
                          const Instance &inst, BufferBackend backend, Rng &rng, CheckCounter &counter);

/// Turns a primitive plan into pick-n-place actions using the allocated buffers.
/// Only the first `steps` primitive actions are used; moves that leave an object
/// where it already is are dropped.
Plan instantiate(const PrimitivePlan &plan, std::size_t steps, const BufferAssignment &buffers,
                 const Arrangement &from, const Arrangement &to);

} // namespace rearrange
