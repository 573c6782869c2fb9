"""J(10) = int_0^10 |zeta(1/2+it)|^2 dt to 40 digits (the grid's head value)."""

import mpmath as mp

mp.mp.dps = 50
value = mp.quad(lambda t: abs(mp.zeta(mp.mpf(1) / 2 + 1j * t)) ** 2, mp.linspace(0, 10, 11))
print(mp.nstr(value, 40))
