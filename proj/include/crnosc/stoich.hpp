#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnosc/network.hpp"

namespace crnosc {

std::size_t rank(const ReactionNetwork& net);

/// Either a positive kernel vector of Gamma or a Stiemke dual w with
/// Gamma^T w >= 0, Gamma^T w != 0. Vectors are primitive integer vectors.
struct NontrivialityCertificate {
  bool nontrivial = false;
  std::optional<std::vector<Rational>> positive_kernel_vector;
  std::optional<std::vector<Rational>> stiemke_dual;
  std::string method;  // "cross_product" or "fourier_motzkin"
};

/// Uses u = c x d for three-reaction rank-two networks and Fourier-Motzkin
/// elimination otherwise (at most 8 reactions).
NontrivialityCertificate dynamically_nontrivial(const ReactionNetwork& net);
NontrivialityCertificate nontrivial_by_fourier_motzkin(const ReactionNetwork& net);
/// Requires m = 3 and rank 2. Falls back to elimination for the dual certificate.
NontrivialityCertificate nontrivial_by_cross_product(const ReactionNetwork& net);
/// Exact check of whichever certificate is present.
bool verify_certificate(const ReactionNetwork& net, const NontrivialityCertificate& cert);

/// Rows of Gamma (in index order) that form a basis of its row space.
std::vector<std::size_t> stoich_row_basis(const ReactionNetwork& net);

/// u = c x d for the first two independent rows c, d of Gamma (m = 3, rank 2).
std::vector<std::int64_t> kernel_cross_product(const ReactionNetwork& net);
std::vector<std::int64_t> kernel_cross_product(const ReactionNetwork& net, std::size_t row_c, std::size_t row_d);

enum class Orientation { Positive, Negative, Degenerate };
std::string to_string(Orientation o);

struct SourceGeometry {
  bool collinear = false;
  std::optional<Orientation> orientation;  // two-species networks only
  // 1 . (a_i x a_j) for species pairs i < j, in lexicographic pair order.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::int64_t>> pair_scalars;
};

/// Requires m = 3.
SourceGeometry source_geometry(const ReactionNetwork& net);

/// Reactions 2X_j -> (2 + c_j) X_j + sum c_i X_i with c_j > 0 and c_i >= 0.
std::vector<std::size_t> positive_divergence_reactions(const ReactionNetwork& net);

enum class DivergenceClass { NegativeEverywhere, IdenticallyZero, Indefinite };
std::string to_string(DivergenceClass d);

/// Sign of the divergence of the field rescaled by (x_1 ... x_n)^{-1}.
DivergenceClass dulac_divergence_class(const ReactionNetwork& net);

struct LotkaVolterraForm {
  std::vector<double> r;
  RealMatrix b;  // diagonal is zero
  std::optional<std::vector<Rational>> r_exact;
  std::optional<RatMatrix> b_exact;
  std::vector<std::pair<std::string, bool>> conditions;
};

/// Detects x_j' = x_j (r_j + sum_{k != j} b_jk x_k) and evaluates the side
/// conditions for n = 2 and n = 3.
std::optional<LotkaVolterraForm> lotka_volterra_form(const MassActionSystem& sys);

}  // namespace crnosc
