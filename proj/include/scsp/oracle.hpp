#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "scsp/model.hpp"

namespace scsp {

// Complete, converse-consistent assignment of one basic relation to every
// ordered variable pair.
struct Certificate {
  int n = 0;
  std::vector<int> cells;  // row-major n*n basic indices

  int at(int i, int j) const { return cells[i * n + j]; }
  int& at(int i, int j) { return cells[i * n + j]; }
  auto operator<=>(const Certificate&) const = default;
};

// Pair-mask matrix used by algebraic closure and certificate search.
struct Network {
  int n = 0;
  std::vector<Mask> cells;

  static Network full(const PartitionScheme& scheme, int n);
  Mask at(int i, int j) const { return cells[i * n + j]; }
  Mask& at(int i, int j) { return cells[i * n + j]; }
};

// Fixpoint refinement mask(x,z) &= compose(mask(x,y), mask(y,z)), with
// converse consistency enforced. Returns false iff some mask empties.
bool aclosure(const PartitionScheme& scheme, Network& net);

// Initial network of an instance: full masks intersected with every binary
// union constraint (DNF constraints do not restrict the network up front).
Network network_from_instance(const Instance& inst);

struct OracleOptions {
  // Max |V| for exhaustive enumeration; -1 picks the default from the
  // scheme size (7 when m <= 3, else 5).
  int exhaustive_cap = -1;
  // Decision procedure for complete basic networks on schemes where
  // algebraic closure is not known to decide them.
  std::function<bool(const Certificate&, const Instance&)> concrete_checker;
};

std::optional<Certificate> find_certificate(const Instance& inst,
                                            const OracleOptions& opts = {});

// The complete list of certificates satisfying inst, in deterministic
// (lexicographic search) order. Throws CapExceeded above the cap.
std::vector<Certificate> enumerate_certificates(const Instance& inst,
                                                const OracleOptions& opts = {});

// True iff the two instances (same scheme, same variable name set) have the
// same set of complete certificates.
bool equivalent(const Instance& a, const Instance& b,
                const OracleOptions& opts = {});

// Decodes the certificate as constraints and re-checks every constraint of
// the instance against it.
bool certificate_satisfies(const Certificate& cert, const Instance& inst);

// Independent concrete-domain checkers.
bool brute_force_equality(const Instance& inst);  // eq scheme, |V| <= 8
bool brute_force_order(const Instance& inst);     // point scheme, |V| <= 7

std::string certificate_to_json(const Certificate& cert, const Instance& inst);

}  // namespace scsp
