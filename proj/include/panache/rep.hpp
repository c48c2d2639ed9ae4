#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "panache/errors.hpp"
#include "panache/group.hpp"
#include "panache/linalg.hpp"
#include "panache/matrix.hpp"

namespace panache {

struct ValidationReport {
  bool valid = true;
  std::optional<std::size_t> singular_generator;
  std::optional<Word> failing_relator;
  std::string message;
};

/// A finite-dimensional rational representation of a finitely presented
/// group, given by one matrix per generator. Objects are identified with
/// their fiber images: there is no separate functor layer.
class Representation {
 public:
  Representation() = default;

  Representation(GroupPresentation presentation, std::size_t dim, std::vector<Matrix> images)
      : presentation_(std::move(presentation)), dim_(dim), images_(std::move(images)) {
    if (images_.size() != presentation_.generator_count()) {
      throw DimensionError("representation needs one image per generator");
    }
    inverses_.reserve(images_.size());
    for (const auto& m : images_) {
      if (m.rows() != dim_ || m.cols() != dim_) {
        throw DimensionError("generator image has shape " + m.shape() + ", expected " +
                             std::to_string(dim_) + "x" + std::to_string(dim_));
      }
      inverses_.push_back(try_inverse(m));
    }
  }

  /// Representation that must pass validate(); throws otherwise.
  static Representation checked(GroupPresentation presentation, std::size_t dim,
                                std::vector<Matrix> images) {
    Representation r(std::move(presentation), dim, std::move(images));
    const auto report = r.validate();
    if (!report.valid) throw NotMorphismError("invalid representation: " + report.message);
    return r;
  }

  static Representation trivial(const GroupPresentation& presentation, std::size_t dim = 1) {
    return {presentation, dim,
            std::vector<Matrix>(presentation.generator_count(), Matrix::identity(dim))};
  }

  const GroupPresentation& presentation() const { return presentation_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& images() const { return images_; }
  const Matrix& image(std::size_t g) const { return images_.at(g); }

  const Matrix& inverse_image(std::size_t g) const {
    const auto& inv = inverses_.at(g);
    if (!inv) throw NotInvertibleError("generator image is singular");
    return *inv;
  }

  const Matrix& letter_image(Letter l) const {
    return l.inverse ? inverse_image(l.generator) : image(l.generator);
  }

  /// Product of the letter images from left to right.
  Matrix evaluate(std::string_view word) const {
    Matrix m = Matrix::identity(dim_);
    for (const auto& l : presentation_.parse(word)) m = m * letter_image(l);
    return m;
  }

  ValidationReport validate() const {
    ValidationReport report;
    for (std::size_t g = 0; g < inverses_.size(); ++g) {
      if (!inverses_[g]) {
        report.valid = false;
        report.singular_generator = g;
        report.message = std::string("image of generator '") + presentation_.generators()[g] +
                         "' is singular";
        return report;
      }
    }
    for (const auto& r : presentation_.relators()) {
      if (!evaluate(r).is_identity()) {
        report.valid = false;
        report.failing_relator = r;
        report.message = "relator '" + r + "' does not evaluate to the identity";
        return report;
      }
    }
    return report;
  }

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.presentation_ == b.presentation_ && a.dim_ == b.dim_ && a.images_ == b.images_;
  }

 private:
  GroupPresentation presentation_;
  std::size_t dim_ = 0;
  std::vector<Matrix> images_;
  std::vector<std::optional<Matrix>> inverses_;
};

inline void require_same_group(const Representation& x, const Representation& y) {
  if (!(x.presentation() == y.presentation())) {
    throw MismatchError("representations are over different presentations");
  }
}

/// An intertwiner: matrix * rho_source(g) == rho_target(g) * matrix, re-checked
/// on every construction.
class Morphism {
 public:
  Morphism(Representation source, Representation target, Matrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    require_same_group(source_, target_);
    if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim()) {
      throw DimensionError("morphism matrix has shape " + matrix_.shape());
    }
    for (std::size_t g = 0; g < source_.images().size(); ++g) {
      if (matrix_ * source_.image(g) != target_.image(g) * matrix_) {
        throw NotMorphismError(std::string("matrix does not intertwine generator '") +
                               source_.presentation().generators()[g] + "'");
      }
    }
  }

  static Morphism identity(const Representation& x) {
    return {x, x, Matrix::identity(x.dim())};
  }

  static Morphism zero(const Representation& x, const Representation& y) {
    return {x, y, Matrix::zero(y.dim(), x.dim())};
  }

  const Representation& source() const { return source_; }
  const Representation& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  Representation source_;
  Representation target_;
  Matrix matrix_;
};

/// g ∘ f.
inline Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source())) throw MismatchError("compose: target/source mismatch");
  return {f.source(), g.target(), g.matrix() * f.matrix()};
}

inline Morphism operator+(const Morphism& f, const Morphism& g) {
  return {f.source(), f.target(), f.matrix() + g.matrix()};
}

inline Morphism operator*(const Rational& s, const Morphism& f) {
  return {f.source(), f.target(), s * f.matrix()};
}

/// Basis of the intertwiners X -> Y, from the joint linear system over all
/// generators, ordered by the canonical pivot rule.
inline std::vector<Morphism> hom_space(const Representation& x, const Representation& y) {
  require_same_group(x, y);
  const std::size_t rows = y.dim(), cols = x.dim();
  auto residual = [&](const Vector& t) {
    const Matrix f(rows, cols, t);
    std::vector<Matrix> eqs;
    for (std::size_t g = 0; g < x.images().size(); ++g) {
      eqs.push_back(f * x.image(g) - y.image(g) * f);
    }
    return flatten(eqs);
  };
  auto [l, c] = linearize(rows * cols, residual);
  std::vector<Morphism> basis;
  for (const auto& v : kernel_basis(l)) basis.emplace_back(x, y, Matrix(rows, cols, v));
  return basis;
}

inline std::size_t hom_dim(const Representation& x, const Representation& y) {
  return hom_space(x, y).size();
}

/// Contragredient: generators act by inverse transpose on the dual basis.
inline Representation dual(const Representation& x) {
  std::vector<Matrix> images;
  for (std::size_t g = 0; g < x.images().size(); ++g) {
    images.push_back(x.inverse_image(g).transpose());
  }
  return {x.presentation(), x.dim(), std::move(images)};
}

/// ᵗf : Y^ -> X^ for f : X -> Y. The bidual is identified with the object by
/// the identity matrix, so transpose(transpose(f)) == f.
inline Morphism transpose(const Morphism& f) {
  return {dual(f.target()), dual(f.source()), f.matrix().transpose()};
}

/// Kronecker product; basis index (i, k) ↦ i * dim(Y) + k.
inline Representation tensor(const Representation& x, const Representation& y) {
  require_same_group(x, y);
  std::vector<Matrix> images;
  for (std::size_t g = 0; g < x.images().size(); ++g) {
    images.push_back(kron(x.image(g), y.image(g)));
  }
  return {x.presentation(), x.dim() * y.dim(), std::move(images)};
}

inline Representation direct_sum(const Representation& x, const Representation& y) {
  require_same_group(x, y);
  std::vector<Matrix> images;
  for (std::size_t g = 0; g < x.images().size(); ++g) {
    images.push_back(Matrix::diagonal_sum({x.image(g), y.image(g)}));
  }
  return {x.presentation(), x.dim() + y.dim(), std::move(images)};
}

/// The swap X ⊗ Y -> Y ⊗ X.
inline Morphism swap_factors(const Representation& x, const Representation& y) {
  Matrix p(x.dim() * y.dim(), x.dim() * y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t k = 0; k < y.dim(); ++k) p(k * x.dim() + i, i * y.dim() + k) = 1;
  return {tensor(x, y), tensor(y, x), p};
}

}  // namespace panache
