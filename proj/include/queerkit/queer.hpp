#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "queerkit/ncalg.hpp"
#include "queerkit/report.hpp"
#include "queerkit/rmatrix.hpp"

namespace queerkit {

enum class AlgebraMode { finite, loop };
enum class Method { q1, rep, exact };

std::string method_name(Method m);
// Throws InvalidInput on unknown names.
Method parse_method(const std::string& s);

// Entry arrays of the generators: L (upper triangular) and L^(r).
OpMatrix<NCPoly> generator_matrix(int n);
OpMatrix<NCPoly> loop_generator_matrix(int n, unsigned r);

struct AlgebraPresentation {
  int n = 1;
  AlgebraMode mode = AlgebraMode::finite;
  unsigned R = 0;
  std::vector<NCPoly> relations;
};

AlgebraPresentation presentation_finite(int n);
// Spectral RTT components complete at truncation R, zero-mode triangularity
// and zero-mode diagonal conditions.
AlgebraPresentation presentation_loop(int n, unsigned R);

struct LbarM {
  OpMatrix<NCPoly> L;
  OpMatrix<NCPoly> Lbar;  // J L J
  OpMatrix<NCPoly> Lbar_inv;
  OpMatrix<NCPoly> M;  // L Lbar^-1
};
LbarM build_Lbar_M(int n);

enum class EvSign { plus, minus };

// Image of L(u): L + Lbar u^-1 (plus) or L - Lbar u^-1 (minus).
OpSeries<NCPoly> ev_apply(int n, EvSign sign);
// Image of a loop generator; finite letters throw InvalidInput.
NCPoly ev_letter(int n, Letter g, EvSign sign);
NCPoly ev_image(int n, const NCPoly& x, EvSign sign);
// L[i,j] -> L[i,j;0].
NCPoly zero_mode_embedding(const NCPoly& x);

/// Generator images on the quantum slot. `generating` is the two-slot
/// operator (quantum slot 0, auxiliary slot 1) whose entries are the images;
/// in loop mode it is exact in u and `images` holds the u^-r coefficients.
struct RepAssignment {
  int n = 1;
  AlgebraMode mode = AlgebraMode::finite;
  unsigned R = 0;
  std::string provenance;
  bool verified = false;
  std::vector<std::string> candidates_tried;
  Tensor generating;
  std::map<Letter, Tensor> images;
};

// Cached per (n, mode, R).
const RepAssignment& vector_rep(int n, AlgebraMode mode, unsigned R = 3);

// Image of x on the quantum slot; letters without an image throw InvalidInput.
Tensor rep_eval(const NCPoly& x, const RepAssignment& rep);
// Coefficientwise image with the quantum slot prepended as slot 0.
Tensor represent(const TensorElement<NCPoly>& x, const RepAssignment& rep);

// Cleared evaluation identity. `corrupt` flips the sign of the odd entries
// of Lbar.
VerificationReport verify_evaluation(int n, Method method, bool corrupt = false);
// ev.relations (image of every loop relation vanishes), ev.embedding,
// ev.twist.
std::vector<VerificationReport> verify_ev_properties(int n, Method method, unsigned R = 3);
// Exchange relations between L, Lbar and S, S - eps P, S - eps P J1 J2,
// P J1 J2. Metadata free_algebra records the status before reduction.
std::vector<VerificationReport> verify_exchange_relations(int n, Method method);
// refl.symmetry (M J M J = -1), refl.equation, refl.check-form,
// refl.equivalence.
std::vector<VerificationReport> verify_reflection(int n, Method method);

struct CentralFiniteResult {
  std::vector<std::string> elements;  // str D M^k, k = 1..k_max
  std::vector<VerificationReport> reports;
};
CentralFiniteResult central_finite(int n, unsigned k_max, Method method);

struct CentralAffineResult {
  std::optional<RatFunc> Z;          // rep method
  std::vector<std::string> series;  // coefficients of u^-r, r = 0..order
  std::vector<VerificationReport> reports;
};
// rep: loop representation; q1: evaluation image at n = 1.
CentralAffineResult central_affine_z(int n, unsigned order, Method method);

// Global sign sigma with str M^{k+1} = sigma (-1)^k (...) at rank 1,
// determined once from k = 0.
int rank1_sign();

// Rank-1 worked example: relations, Lbar and M displays, str M^{k+1}
// closed form, z(u) product formula and series identity.
std::vector<VerificationReport> rank1_example_suite(unsigned order = 6);

// Exploratory comparison of z(u) coefficients with str D M^k under the
// evaluation image in the vector representation. Never asserted.
std::vector<VerificationReport> explore_conjecture(int n, unsigned order);

// Names accepted by run_queer_identity.
const std::vector<std::string>& queer_identity_names();
std::vector<VerificationReport> run_queer_identity(const std::string& name, int n, Method method);
// Every queer check applicable at rank n with the given method.
std::vector<VerificationReport> queer_suite(int n, Method method);

}  // namespace queerkit
