/*! \file enumerator.hpp
 * \brief Size-fair enumeration of grammar programs.
 *
 * Layer k of a datatype holds its programs of size exactly k. Layers are
 * produced in constructor declaration order, then by the sizes given to the
 * children (first child smallest first), then by the children themselves
 * (first child slowest). Candidate search never looks at layer k+1 before
 * layer k is exhausted.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <optional>
#include <vector>

#include "sygus/grammar.hpp"

namespace sygus {

/// Output signature of a program, used to merge programs that behave alike.
using Fingerprint = std::function<std::vector<Value>(const ProgramTerm&)>;

/// Memoized layers, filled on demand. With a fingerprint, a program is kept
/// only if no earlier program of its datatype (smaller, or earlier in the
/// same layer) has the same fingerprint.
class LayerCache {
 public:
  explicit LayerCache(const GrammarSpec& g, Fingerprint fp = {})
      : g_(&g), fp_(std::move(fp)), layers_(g.datatypes().size()), seen_(g.datatypes().size()) {}

  const GrammarSpec& grammar() const { return *g_; }

  const std::vector<ProgramTerm>& layer(std::size_t dt, std::size_t k);

 private:
  const GrammarSpec* g_;
  Fingerprint fp_;
  // unique_ptr keeps each layer at a stable address while rows grow
  std::vector<std::vector<std::unique_ptr<std::vector<ProgramTerm>>>> layers_;
  std::vector<std::set<std::vector<Value>>> seen_;
};

/// Resumable stream over one layer.
class LayerCursor {
 public:
  LayerCursor(LayerCache& cache, std::size_t dt, std::size_t k) : cache_(&cache), dt_(dt), k_(k) {}

  std::optional<ProgramTerm> next() {
    const GrammarSpec& g = cache_->grammar();
    const auto& ctors = g.datatype(dt_).constructors;
    for (;;) {
      if (ctor_ >= ctors.size()) return std::nullopt;
      const Constructor& c = ctors[ctor_];
      if (c.arity() == 0) {
        std::size_t here = ctor_++;
        if (k_ == 0) return ProgramTerm::unchecked(dt_, here, {});
        continue;
      }
      if (k_ == 0) {
        ++ctor_;
        continue;
      }
      if (!in_ctor_) {
        sizes_.assign(c.arity(), 0);
        sizes_.back() = k_ - 1;
        in_ctor_ = true;
        if (!load_children(c)) {
          if (!advance_sizes(c)) {
            leave_ctor();
            continue;
          }
        }
      }
      if (emit_ready_) {
        std::vector<ProgramTerm> kids(c.arity());
        for (std::size_t i = 0; i < kids.size(); ++i) kids[i] = (*lists_[i])[idx_[i]];
        ProgramTerm out = ProgramTerm::unchecked(dt_, ctor_, std::move(kids));
        if (!advance_indices()) {
          if (!advance_sizes(c)) leave_ctor();
        }
        return out;
      }
      if (!advance_sizes(c)) leave_ctor();
    }
  }

 private:
  // Lexicographic successor of the size composition that has a nonempty
  // child list product.
  bool advance_sizes(const Constructor& c) {
    for (;;) {
      if (!next_composition()) return false;
      if (load_children(c)) return true;
    }
  }

  // Compositions of k-1 into arity parts, in lexicographic order.
  bool next_composition() {
    const std::size_t n = sizes_.size();
    std::size_t suffix = 0;
    for (std::size_t i = n - 1; i-- > 0;) {
      suffix += sizes_[i + 1];
      if (suffix > 0) {
        ++sizes_[i];
        for (std::size_t j = i + 1; j < n; ++j) sizes_[j] = 0;
        sizes_[n - 1] = suffix - 1;
        return true;
      }
    }
    return false;
  }

  bool load_children(const Constructor& c) {
    lists_.assign(c.arity(), nullptr);
    for (std::size_t i = 0; i < c.arity(); ++i) {
      lists_[i] = &cache_->layer(c.args[i], sizes_[i]);
      if (lists_[i]->empty()) {
        emit_ready_ = false;
        return false;
      }
    }
    idx_.assign(c.arity(), 0);
    emit_ready_ = true;
    return true;
  }

  bool advance_indices() {
    for (std::size_t i = idx_.size(); i-- > 0;) {
      if (++idx_[i] < lists_[i]->size()) return true;
      idx_[i] = 0;
    }
    emit_ready_ = false;
    return false;
  }

  void leave_ctor() {
    in_ctor_ = false;
    emit_ready_ = false;
    ++ctor_;
  }

  LayerCache* cache_;
  std::size_t dt_;
  std::size_t k_;
  std::size_t ctor_ = 0;
  bool in_ctor_ = false;
  bool emit_ready_ = false;
  std::vector<std::size_t> sizes_;
  std::vector<const std::vector<ProgramTerm>*> lists_;
  std::vector<std::size_t> idx_;
};

inline const std::vector<ProgramTerm>& LayerCache::layer(std::size_t dt, std::size_t k) {
  auto& row = layers_.at(dt);
  if (row.size() <= k) row.resize(k + 1);
  if (!row[k]) {
    // merging is first-come, so smaller layers must exist first
    if (fp_)
      for (std::size_t j = 0; j < k; ++j) layer(dt, j);
    std::vector<ProgramTerm> out;
    if (k >= g_->min_size(dt)) {
      LayerCursor cur(*this, dt, k);
      while (auto p = cur.next()) {
        if (fp_ && !seen_[dt].insert(fp_(*p)).second) continue;
        out.push_back(std::move(*p));
      }
    }
    layers_[dt][k] = std::make_unique<std::vector<ProgramTerm>>(std::move(out));
  }
  return *layers_[dt][k];
}

/// All programs of datatype `dt` with size exactly `k`, each once, in the
/// deterministic layer order.
inline std::vector<ProgramTerm> enumerate_layer(const GrammarSpec& g, std::size_t dt, std::size_t k) {
  LayerCache cache(g);
  return cache.layer(dt, k);
}

/// Counterexample points gathered by the refinement loop.
class CounterexampleStore {
 public:
  /// Records `point`, which must refute the candidate that produced it and
  /// must be new. Either failure means the solver and the evaluator
  /// disagree, so InternalConsistency is thrown.
  void add(Assignment point, bool refutes_candidate) {
    if (!refutes_candidate)
      throw InternalConsistency("counterexample " + point.to_string() + " does not refute its candidate");
    for (const Assignment& p : points_)
      if (p == point) throw InternalConsistency("counterexample " + point.to_string() + " repeats a stored point");
    points_.push_back(std::move(point));
  }

  const std::vector<Assignment>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Assignment> points_;
};

struct EnumeratorConfig {
  std::size_t max_size = 8;
  /// Observational-equivalence pruning: while building layers, drop every
  /// program whose outputs on the stored points repeat an earlier program's
  /// (needs a signature function). Layers are rebuilt whenever a point is
  /// added.
  bool prune_equivalent = false;
};

enum class CandidateStatus { Found, Exhausted, CapReached };

struct CandidateResult {
  CandidateStatus status = CandidateStatus::Exhausted;
  std::optional<ProgramTerm> program;
};

/// Size of a finished layer and how many programs were examined in it.
struct LayerRecord {
  std::size_t size = 0;
  std::size_t examined = 0;
};

/// Decides the property for a program at one stored point.
using PropertyCheck = std::function<bool(const ProgramTerm&, const Assignment&)>;
/// Output signature of a program of any datatype on the stored points, for
/// pruning.
using SignatureFn = std::function<std::vector<Value>(const ProgramTerm&, const std::vector<Assignment>&)>;

/// Candidate generation for the refinement loop: returns the next program,
/// in layer-then-cursor order, that satisfies the property at every stored
/// point. Programs skipped earlier fail some stored point and the store only
/// grows, so resuming the cursor loses nothing.
class Enumerator {
 public:
  Enumerator(const GrammarSpec& g, EnumeratorConfig cfg = {})
      : g_(&g), cfg_(cfg), cache_(g), cursor_(cache_, g.start(), 0) {}
  Enumerator(const Enumerator&) = delete;
  Enumerator& operator=(const Enumerator&) = delete;

  CandidateResult next_candidate(const CounterexampleStore& store, const PropertyCheck& prop,
                                 const SignatureFn& signature = {}) {
    const bool prune = cfg_.prune_equivalent && static_cast<bool>(signature);
    if (prune && store.size() != signature_points_) {
      // Restarting the current layer is safe: every program returned
      // before fails the point recorded for it.
      signature_points_ = store.size();
      const std::vector<Assignment>* points = &store.points();
      cache_ = LayerCache(*g_, [signature, points](const ProgramTerm& p) { return signature(p, *points); });
      cursor_ = LayerCursor(cache_, g_->start(), size_);
    }
    for (;;) {
      auto p = cursor_.next();
      if (!p) {
        layers_.push_back({size_, examined_});
        const auto bound = g_->max_program_size();
        if (bound && size_ + 1 > *bound) return {CandidateStatus::Exhausted, std::nullopt};
        if (size_ + 1 > cfg_.max_size) return {CandidateStatus::CapReached, std::nullopt};
        ++size_;
        examined_ = 0;
        cursor_ = LayerCursor(cache_, g_->start(), size_);
        continue;
      }
      ++examined_;
      bool ok = true;
      for (const Assignment& pt : store.points()) {
        if (!prop(*p, pt)) {
          ok = false;
          break;
        }
      }
      if (ok) return {CandidateStatus::Found, std::move(p)};
    }
  }

  std::size_t current_size() const { return size_; }
  /// Finished layers, in order.
  const std::vector<LayerRecord>& finished_layers() const { return layers_; }
  /// Programs examined so far in the current layer.
  std::size_t examined_in_layer() const { return examined_; }

 private:
  const GrammarSpec* g_;
  EnumeratorConfig cfg_;
  LayerCache cache_;
  LayerCursor cursor_;
  std::size_t size_ = 0;
  std::size_t examined_ = 0;
  std::vector<LayerRecord> layers_;
  std::size_t signature_points_ = 0;
};

}  // namespace sygus
