#pragma once

/**
 * @file builtin.hpp
 * @brief Embedded example sessions.
 */

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "bdt/session/session.hpp"

namespace bdt {

namespace detail {

inline constexpr std::string_view kWeylSession = R"(# Weyl pair S_W^2 and the iterated transform of its first factor
[session]
name = weyl-n
max_order = 24

[variables]
x = x1, x2
z = z1, z2

[kernel exp]
symbols = E
symmetric = yes
D[x1] E = z1*E
D[x2] E = z2*E
D[z1] E = x1*E
D[z2] E = x2*E

[system W]
block = x
l1 : z1 -> D[x1]
l2 : z2 -> D[x2]

[system W']
block = z
m1 : x1 -> D[z1]
m2 : x2 -> D[z2]

[pair weyl]
primal = W
dual = W'
kernel = exp

[tasks]
report pair = weyl
duality pair = weyl; count = 100; length = 4; label = weyl duality
vanishing pair = weyl; f = l1; g = m1
vanishing L = D[x1]^2 + x1^3; g = x1; max = 8; expect = nonterminating; label = non-bispectral control
transform pair = weyl; f = l1; g = m1; prefix = T; dual_prefix = U; repair = weyl1; expect.T0 = D[x1]^2 - 2*x1^-1*D[x1]; label = first iterate
vanishing pair = weyl1; f = T0; g = U0
transform pair = weyl1; f = T0; g = U0; prefix = V; dual_prefix = Y; label = second iterate
)";

inline constexpr std::string_view kAirySession = R"(# Airy product pair: exp(x1 z1) Ai(x2 + z2)
[session]
name = airy-product

[variables]
x = x1, x2
z = z1, z2

[kernel airy]
symbols = A, A1
symmetric = yes
D[x1] A = z1*A
D[x1] A1 = z1*A1
D[z1] A = x1*A
D[z1] A1 = x1*A1
D[x2] A = A1
D[x2] A1 = (x2 + z2)*A
D[z2] A = A1
D[z2] A1 = (x2 + z2)*A

[system airy]
block = x
l1 : z1 -> D[x1]
l2 : z2 -> D[x2]^2 - x2

[system airy']
block = z
m1 : x1 -> D[z1]
m2 : x2 -> D[z2]^2 - z2

[pair airy]
primal = airy
dual = airy'
kernel = airy

[tasks]
report pair = airy
duality pair = airy; count = 100; length = 4; label = airy duality
vanishing pair = airy; f = l2; g = m2
vanishing pair = airy; f = l1; g = m1 + m2
transform pair = airy; f = l2; g = m1
)";

inline constexpr std::string_view kCm3Session = R"(# Calogero-Moser, three particles, coupling 2
[session]
name = cm3

[variables]
x = x1, x2, x3
z = z1, z2, z3

[define]
K = (D[x1]-D[x2])*(D[x1]-D[x3])*(D[x2]-D[x3]) - 2*(x1-x2)^-1*(D[x1]-D[x3])*(D[x2]-D[x3]) - 2*(x1-x3)^-1*(D[x1]-D[x2])*(D[x2]-D[x3]) - 2*(x2-x3)^-1*(D[x1]-D[x2])*(D[x1]-D[x3]) + 4*(x2-x3)^-1*(x1-x3)^-1*(D[x1]-D[x2]) + 4*(x1-x3)^-1*(x1-x2)^-1*(D[x2]-D[x3]) + 4*(x1-x2)^-1*(x2-x3)^-1*(D[x1]-D[x3]) - 12*(x1-x2)^-1*(x1-x3)^-1*(x2-x3)^-1
L1 = D[x1] + D[x2] + D[x3]
L2 = D[x1]^2 + D[x2]^2 + D[x3]^2 - 4*((x1-x2)^-2 + (x1-x3)^-2 + (x2-x3)^-2)
L3 = D[x1]^3 + D[x2]^3 + D[x3]^3 - 6*((x1-x2)^-2*(D[x1]+D[x2]) + (x1-x3)^-2*(D[x1]+D[x3]) + (x2-x3)^-2*(D[x2]+D[x3]))
M1 = D[z1] + D[z2] + D[z3]
M2 = D[z1]^2 + D[z2]^2 + D[z3]^2 - 4*((z1-z2)^-2 + (z1-z3)^-2 + (z2-z3)^-2)
M3 = D[z1]^3 + D[z2]^3 + D[z3]^3 - 6*((z1-z2)^-2*(D[z1]+D[z2]) + (z1-z3)^-2*(D[z1]+D[z3]) + (z2-z3)^-2*(D[z2]+D[z3]))

[kernel exp]
symbols = E
symmetric = yes
D[x1] E = z1*E
D[x2] E = z2*E
D[x3] E = z3*E
D[z1] E = x1*E
D[z2] E = x2*E
D[z3] E = x3*E

[system cm3]
block = x
localize = (x1-x2)*(x1-x3)*(x2-x3)
h1 : z1 + z2 + z3 -> L1
h2 : z1^2 + z2^2 + z3^2 -> L2
h3 : z1^3 + z2^3 + z3^3 -> L3

[system cm3']
block = z
localize = (z1-z2)*(z1-z3)*(z2-z3)
H1 : x1 + x2 + x3 -> M1
H2 : x1^2 + x2^2 + x3^2 -> M2
H3 : x1^3 + x2^3 + x3^3 -> M3

[pair cm3]
primal = cm3
dual = cm3'
kernel = exp
psi = K
scale = ((z1-z2)*(z1-z3)*(z2-z3))^-1

[tasks]
verify K = K; L = D[x1]^2 + D[x2]^2 + D[x3]^2; Lt = L2; label = standard Hamiltonian
verify K = K; L = L1; Lt = L1; label = momentum
verify K = K; L = D[x1]^3 + D[x2]^3 + D[x3]^3; Lt = L3; label = cubic Hamiltonian
commute system = cm3
vanishing pair = cm3; f = h2; g = H1
)";

inline constexpr std::string_view kBkSession = R"(# Rank-two dressing with tau = x1^2 - x2, q = x1 x2 - lambda
[session]
name = bk

[variables]
x = x1, x2
z = z1, z2
params = lambda

[define]
tau = x1^2 - x2
K = (D[x1] - 2*x1*tau^-1)*(D[x2] + tau^-1) - lambda
Kprinted = (D[x1] - 2*x1*tau^-1)*(D[x1] + tau^-1) - lambda
Lq = D[x1]*D[x2] - lambda

[tasks]
divide K = K; L = Lq^3; pivot = x1; store = B0; label = q^3
divide K = K; L = D[x1]*Lq^3; pivot = x1; store = B1; label = x1 q^3
divide K = K; L = D[x2]*Lq^3; pivot = x1; store = B2; label = x2 q^3
commute ops = B0, B1, B2; label = transformed system
verify K = K; L = Lq^3; Lt = B0
divide K = Kprinted; L = Lq^3; pivot = x1; expect = remainder; label = printed K on q^3
)";

inline constexpr std::string_view kSec5Session = R"(# Airy product pair with f = l1^2 + l2, g = m1 + s m2
[session]
name = sec5-example1

[variables]
x = x1, x2
z = z1, z2
params = s

[define]
G = x1 + s*x2
LF = D[x1]^2 + D[x2]^2 - x2

[kernel airy]
symbols = A, A1
symmetric = yes
D[x1] A = z1*A
D[x1] A1 = z1*A1
D[z1] A = x1*A
D[z1] A1 = x1*A1
D[x2] A = A1
D[x2] A1 = (x2 + z2)*A
D[z2] A = A1
D[z2] A1 = (x2 + z2)*A

[system airy]
block = x
l1 : z1 -> D[x1]
l2 : z2 -> D[x2]^2 - x2

[system airy']
block = z
m1 : x1 -> D[z1]
m2 : x2 -> D[z2]^2 - z2

[pair airy]
primal = airy
dual = airy'
kernel = airy

[tasks]
vanishing pair = airy; f = l1^2 + l2; g = m1 + s*m2
transform pair = airy; f = l1^2 + l2; g = m1 + s*m2; printed_K = G^2*(D[x1]^2 + D[x2]^2) - 3*G*s*(D[x1] + s*D[x2]) + G^2 + 2 + 2*s^2; printed_Q = LF^2*G + 2*LF*(D[x1] + s*D[x2]) + 2; printed_power = 2; repair = airy1
duality pair = airy; count = 100; length = 4
)";

inline constexpr std::string_view kCm3IteratedSession = R"(# Darboux transform of the CM3 pair by f = h2, g = H1
[session]
name = cm3-iterated

[variables]
x = x1, x2, x3
z = z1, z2, z3

[define]
K = (D[x1]-D[x2])*(D[x1]-D[x3])*(D[x2]-D[x3]) - 2*(x1-x2)^-1*(D[x1]-D[x3])*(D[x2]-D[x3]) - 2*(x1-x3)^-1*(D[x1]-D[x2])*(D[x2]-D[x3]) - 2*(x2-x3)^-1*(D[x1]-D[x2])*(D[x1]-D[x3]) + 4*(x2-x3)^-1*(x1-x3)^-1*(D[x1]-D[x2]) + 4*(x1-x3)^-1*(x1-x2)^-1*(D[x2]-D[x3]) + 4*(x1-x2)^-1*(x2-x3)^-1*(D[x1]-D[x3]) - 12*(x1-x2)^-1*(x1-x3)^-1*(x2-x3)^-1
L1 = D[x1] + D[x2] + D[x3]
L2 = D[x1]^2 + D[x2]^2 + D[x3]^2 - 4*((x1-x2)^-2 + (x1-x3)^-2 + (x2-x3)^-2)
L3 = D[x1]^3 + D[x2]^3 + D[x3]^3 - 6*((x1-x2)^-2*(D[x1]+D[x2]) + (x1-x3)^-2*(D[x1]+D[x3]) + (x2-x3)^-2*(D[x2]+D[x3]))
M1 = D[z1] + D[z2] + D[z3]
M2 = D[z1]^2 + D[z2]^2 + D[z3]^2 - 4*((z1-z2)^-2 + (z1-z3)^-2 + (z2-z3)^-2)
M3 = D[z1]^3 + D[z2]^3 + D[z3]^3 - 6*((z1-z2)^-2*(D[z1]+D[z2]) + (z1-z3)^-2*(D[z1]+D[z3]) + (z2-z3)^-2*(D[z2]+D[z3]))

[kernel exp]
symbols = E
symmetric = yes
D[x1] E = z1*E
D[x2] E = z2*E
D[x3] E = z3*E
D[z1] E = x1*E
D[z2] E = x2*E
D[z3] E = x3*E

[system cm3]
block = x
localize = (x1-x2)*(x1-x3)*(x2-x3)
h1 : z1 + z2 + z3 -> L1
h2 : z1^2 + z2^2 + z3^2 -> L2
h3 : z1^3 + z2^3 + z3^3 -> L3

[system cm3']
block = z
localize = (z1-z2)*(z1-z3)*(z2-z3)
H1 : x1 + x2 + x3 -> M1
H2 : x1^2 + x2^2 + x3^2 -> M2
H3 : x1^3 + x2^3 + x3^3 -> M3

[pair cm3]
primal = cm3
dual = cm3'
kernel = exp
psi = K
scale = ((z1-z2)*(z1-z3)*(z2-z3))^-1

[tasks]
vanishing pair = cm3; f = h2; g = H1
transform pair = cm3; f = h2; g = H1; side = lowest
)";

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kBuiltins{{
    {"weyl-n", kWeylSession},
    {"airy-product", kAirySession},
    {"cm3", kCm3Session},
    {"bk", kBkSession},
    {"sec5-example1", kSec5Session},
    {"cm3-iterated", kCm3IteratedSession},
}};

}  // namespace detail

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::kBuiltins) out.emplace_back(name);
  return out;
}

/// Session text of a built-in example.
inline std::string builtin_source(std::string_view name) {
  for (const auto& [n, text] : detail::kBuiltins)
    if (n == name) return std::string(text);
  std::string list;
  for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
  throw ValidationError("unknown example '" + std::string(name) + "' (available: " + list + ")");
}

inline Session builtin_example(std::string_view name) { return parse_session(builtin_source(name)); }

}  // namespace bdt
