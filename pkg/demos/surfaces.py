"""
The two surfaces
================

Build the blown-up quadric S(n) and the resolved minitwistor surface T(n),
then print the intersection numbers that everything else relies on.
"""

from minitwistor.lattice import build_minitwistor_T, build_surface_S, validate_configuration, virtual_genus

n = 5
s = build_surface_S(n)
print(f"S({n}): rank {s.lattice.rank}, K^2 = {s.K @ s.K}")

# the anticanonical cycle and the four extra (-1)-curves
for name in s.names:
    c = s[name]
    print(f"  {name:5s} self={c @ c:3d} genus={virtual_genus(c)}  {c}")

rep = validate_configuration(s)
print(f"configuration checks: {rep.n_pass} pass, {rep.n_fail} fail")

# T(n) is given directly by its Gram matrix on 2n curves
t = build_minitwistor_T(n)
c0 = t.C0
print(f"T({n}): C0^2 = {c0 @ c0}, K.C0 = {t.K @ c0}, genus {virtual_genus(c0)}, h.C0 = {t.h @ c0}")
for label, comps in t.fibers:
    print(f"  fiber over {label}: {' + '.join(comps)}")
