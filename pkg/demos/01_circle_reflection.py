"""Circles as Hermitian matrices and reflection through them.

Every circle or line in the extended plane is encoded by a 2x2 Hermitian
matrix with negative determinant, unique up to a real factor.  Reflection
of points and of whole circles is then linear algebra; this script walks
through the basic moves.
"""

import numpy as np

from lenspot import (from_center_radius, real_axis, reflect_circle,
                     reflect_point, unit_circle)

mirror = unit_circle()
print("the unit circle as a matrix: a=%g b=%s c=%g" % (mirror.a, mirror.b, mirror.c))

# points reflect anti-conformally; the center goes to infinity
for z in (2.0, 0.5 + 0.5j, 0.0):
    image = reflect_point(mirror, z)
    print(f"reflect {z} through |z|=1  ->  {image.value()}")

# a line through the inversion center is preserved
line = real_axis()
print("\nthe real axis reflects to itself:",
      reflect_circle(mirror, line).normalized())

# an off-center circle maps to another circle; centers are NOT preserved
other = from_center_radius(3.0, 1.0)
image = reflect_circle(mirror, other)
print(f"|z-3|=1 reflects to center {image.center:.6g}, radius {image.radius:.6g}")
print("(the image of the center 3 would be 1/3, not the image's center 3/8)")

# reflection is involutive on circles as well as on points
back = reflect_circle(mirror, image)
print("reflecting back recovers it: center %.6g radius %.6g"
      % (back.center.real, back.radius))

# sanity: sample points of the source circle land on the image circle
phis = np.linspace(0, 2 * np.pi, 5)[:-1]
for phi in phis:
    z = 3.0 + np.exp(1j * phi)
    w = reflect_point(mirror, z).value()
    print(f"  point {z:.3f} -> {w:.6f}, distance to image center "
          f"{abs(w - image.center):.6f}")
