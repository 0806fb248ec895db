#include "adeq/rep.hpp"

#include "adeq/linalg.hpp"

#include <deque>

namespace adeq {

namespace {

// Embed the (dim_head x dim_tail) block of an arrow into End of the total
// space, using cumulative vertex offsets.
MatQ embed_block(const MatQ& block, int row_off, int col_off, int total) {
  MatQ out(total, total);
  for (int r = 0; r < block.rows(); ++r)
    for (int c = 0; c < block.cols(); ++c) out.at(row_off + r, col_off + c) = block.at(r, c);
  return out;
}

std::vector<QC> vectorize(const MatQ& m) {
  std::vector<QC> flat;
  flat.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) flat.push_back(m.at(r, c));
  return flat;
}

}  // namespace

bool is_simple_burnside(const Representation<QC>& v) {
  validate_shapes(v);
  const Quiver& q = v.quiver;
  std::vector<int> offset(static_cast<std::size_t>(q.vertex_count) + 1, 0);
  for (int i = 0; i < q.vertex_count; ++i)
    offset[static_cast<std::size_t>(i) + 1] =
        offset[static_cast<std::size_t>(i)] + v.dim[static_cast<std::size_t>(i)];
  const int total = offset.back();
  if (total < 1) throw std::domain_error("simplicity needs total dimension >= 1");

  // Generators: vertex idempotents plus all arrow and loop matrices, embedded
  // into the total endomorphism space.
  std::vector<MatQ> gens;
  for (int i = 0; i < q.vertex_count; ++i) {
    int d = v.dim[static_cast<std::size_t>(i)];
    if (d == 0) continue;
    gens.push_back(embed_block(MatQ::identity(d), offset[static_cast<std::size_t>(i)],
                               offset[static_cast<std::size_t>(i)], total));
  }
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const Arrow& a = q.arrows[k];
    gens.push_back(embed_block(v.mats[k], offset[static_cast<std::size_t>(a.head)],
                               offset[static_cast<std::size_t>(a.tail)], total));
  }

  // Close the span of all words in the generators under right multiplication.
  // Every word is reachable this way since w = ((g1 g2) g3) ... gk.
  const std::size_t ambient = static_cast<std::size_t>(total) * static_cast<std::size_t>(total);
  SpanTracker span(ambient);
  std::vector<MatQ> basis;
  std::deque<std::size_t> pending;
  for (const MatQ& g : gens) {
    if (span.insert(vectorize(g))) {
      basis.push_back(g);
      pending.push_back(basis.size() - 1);
    }
  }
  while (!pending.empty() && span.dim() < ambient) {
    std::size_t b = pending.front();
    pending.pop_front();
    for (const MatQ& g : gens) {
      MatQ prod = basis[b] * g;
      if (span.insert(vectorize(prod))) {
        basis.push_back(std::move(prod));
        pending.push_back(basis.size() - 1);
        if (span.dim() == ambient) break;
      }
    }
  }

  // Cross-check the incremental span dimension with one-shot fraction-free
  // elimination over the collected words.
  MatQ stacked(static_cast<int>(basis.size()), static_cast<int>(ambient));
  for (std::size_t r = 0; r < basis.size(); ++r) {
    std::vector<QC> flat = vectorize(basis[r]);
    for (std::size_t c = 0; c < ambient; ++c)
      stacked.at(static_cast<int>(r), static_cast<int>(c)) = flat[c];
  }
  if (static_cast<std::size_t>(exact_rank(stacked)) != span.dim())
    throw std::logic_error("span dimension disagrees with fraction-free rank");

  return span.dim() == ambient;
}

bool is_simple_burnside(const Representation<CD>&) {
  throw std::domain_error("simplicity is decided over exact scalars only; convert the input");
}

const char* to_string(StabilityVerdict::Status s) {
  switch (s) {
    case StabilityVerdict::Status::Stable: return "stable";
    case StabilityVerdict::Status::SemistableNotStable: return "semistable-not-stable";
    case StabilityVerdict::Status::Unstable: return "unstable";
    case StabilityVerdict::Status::Undecided: return "undecided";
  }
  return "undecided";
}

const char* to_string(StabilityVerdict::Method m) {
  switch (m) {
    case StabilityVerdict::Method::ThinEnumeration: return "thin-enumeration";
    case StabilityVerdict::Method::BurnsideSimple: return "burnside-simple";
    case StabilityVerdict::Method::None: return "none";
  }
  return "none";
}

bool loop_endomorphism_check(const Representation<QC>& v) {
  if (!is_simple_burnside(v)) return true;  // implication holds vacuously
  return scalar_loop_lambda(v, 0.0).has_value();
}

}  // namespace adeq
