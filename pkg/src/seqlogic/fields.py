"""Small finite fields F_q for q in {2, 3, 4, 5}, table driven."""

from __future__ import annotations

from dataclasses import dataclass, field


def _f4_tables():
    # F_4 = F_2[g]/(g^2+g+1), element a+b*g encoded as a+2b, so g=2, g^2=3.
    def mul(x, y):
        a0, a1 = x & 1, x >> 1
        b0, b1 = y & 1, y >> 1
        # (a0+a1 g)(b0+b1 g) = a0 b0 + (a0 b1 + a1 b0) g + a1 b1 (g+1)
        c0 = (a0 * b0 + a1 * b1) & 1
        c1 = (a0 * b1 + a1 * b0 + a1 * b1) & 1
        return c0 + 2 * c1

    add = [[x ^ y for y in range(4)] for x in range(4)]
    mult = [[mul(x, y) for y in range(4)] for x in range(4)]
    return add, mult


@dataclass(frozen=True)
class FqField:
    """Arithmetic tables for F_q, elements encoded as 0..q-1."""

    q: int
    add_table: tuple = field(repr=False, default=None)
    mul_table: tuple = field(repr=False, default=None)

    def __post_init__(self):
        if self.q in (2, 3, 5):
            add = [[(x + y) % self.q for y in range(self.q)] for x in range(self.q)]
            mult = [[(x * y) % self.q for y in range(self.q)] for x in range(self.q)]
        elif self.q == 4:
            add, mult = _f4_tables()
        else:
            raise ValueError(f"unsupported field size {self.q}")
        object.__setattr__(self, "add_table", tuple(tuple(r) for r in add))
        object.__setattr__(self, "mul_table", tuple(tuple(r) for r in mult))
        _check_axioms(self)

    @property
    def elements(self):
        return range(self.q)

    def add(self, x, y):
        return self.add_table[x][y]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def neg(self, x):
        for y in self.elements:
            if self.add_table[x][y] == 0:
                return y
        raise AssertionError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    @property
    def char(self):
        return 2 if self.q in (2, 4) else self.q


def _check_axioms(f: FqField):
    # One-time sanity pass: field axioms over the finite tables.
    els = list(f.elements)
    for x in els:
        assert f.add(x, 0) == x and f.mul(x, 1) == x
        assert any(f.add(x, y) == 0 for y in els)
        if x != 0:
            assert any(f.mul(x, y) == 1 for y in els)
        for y in els:
            assert f.add(x, y) == f.add(y, x)
            assert f.mul(x, y) == f.mul(y, x)
            for z in els:
                assert f.add(f.add(x, y), z) == f.add(x, f.add(y, z))
                assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
                assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
