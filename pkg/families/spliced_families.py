"""
拼接得到的圖多重鏈環族

(I-I)、(I-I-I)、(II-I)、(III-I)、(II-III)。所有拼接都有 δ = 1，
頁面沿一個環帶黏合，分離環面上的扭轉記為 gamma（第二條為 theta）。
"""

from typing import Dict, List, Tuple

from config import Config
from families.base_family import (
    BaseFamily, FamilyId, FormBuilder, branch_factor, cable_factors, cable_leaves,
    combination, difference_chain, indexed, leaf, monomial_product,
)


def _cables(*groups: Tuple[str, int]) -> List[str]:
    names = []
    for label, count in groups:
        names += indexed(label, count)
    return names


def _splice_edge(first: str, second: str, first_weight: int, second_weight: int, curve: str) -> Dict:
    return {'ends': [first, second], 'weights': [first_weight, second_weight], 'curve': curve}


class SplicedFamily(BaseFamily):
    """拼接族共用的小工具"""

    @staticmethod
    def _coupling(condition: bool, value: int) -> int:
        return value if condition else 0


class FamilyIxI(SplicedFamily):
    """(I-I)：(I) 的 S1 (權重 p) 與另一個 (I) 的 S2 (權重 q-1) 拼接"""

    family_id = FamilyId.I_I
    param_names = ('p', 'q', 'u', 'v')
    bounds = {
        'p': (lambda values: 2, "p >= 2"),
        'q': (lambda values: values['p'] + 1, "p < q"),
        'u': (lambda values: 1, "u >= 1"),
        'v': (lambda values: 1, "v >= 1"),
    }

    def diagram_layout(self, values):
        p, q, u, v = values['p'], values['q'], values['u'], values['v']
        leaves = [leaf('a', 'n1', p - 1, 1)] + cable_leaves('c', 'n1', u, 1) + cable_leaves('d', 'n1', u, -1)
        leaves += [leaf('b', 'n2', q, -1)] + cable_leaves('e', 'n2', v, 1) + cable_leaves('f', 'n2', v, -1)
        return {'nodes': ['n1', 'n2'], 'leaves': leaves,
                'edges': [_splice_edge('n1', 'n2', p, q - 1, 'gamma')]}

    def monodromy_factors(self, values):
        p, q, u, v = values['p'], values['q'], values['u'], values['v']
        return ([('a', -(p - 1))] + cable_factors('c', u, -1) + cable_factors('d', u, 1)
                + [('gamma', -(q - p)), ('b', q)] + cable_factors('e', v, -1) + cable_factors('f', v, 1))

    def homology_basis(self, values):
        p, q, u, v = values['p'], values['q'], values['u'], values['v']
        z1 = combination(('gamma1', 1), *[(n, 1) for n in _cables(('c', u), ('d', u))], (f"a{p - 1}", -1))
        z2 = combination(('b1', 1), *[(n, 1) for n in _cables(('e', v), ('f', v))], (f"gamma{q - p}", -1))
        return (difference_chain('a', p - 2) + difference_chain('gamma', q - p - 1)
                + difference_chain('b', q - 1) + [z1, z2])

    def displayed_matrix(self, values):
        p, q = values['p'], values['q']
        form = FormBuilder()
        _, a_last = form.add_block(self.j(p - 2))
        g_first, g_last = form.add_block(self.j(q - p - 1))
        b_first, _ = form.add_block(self.jt(q - 1))
        z1 = form.add_generator(2)
        z2 = form.add_generator(0)
        form.couple(z1, z2, self._coupling(q == p + 1, -1))
        form.couple(a_last, z1, 1)
        form.couple(g_first, z1, 1)
        form.couple(g_last, z2, 1)
        form.couple(b_first, z2, -1)
        return form.rows()

    def chern_tail(self, values):
        return (-2 * values['u'], -2 * values['v'])

    def euler_characteristic(self, values):
        return 2 * values['q'] - 1

    def negative_twists(self, values):
        return values['q'] + values['u'] + values['v'] - 1

    def expected_signature(self, values):
        return 0

    def expected_determinant(self, values):
        return (-1) ** (values['q'] - 1)

    def trailing_inverse(self, values):
        p, q = values['p'], values['q']
        return [[p * (p - 1), q * (p - 1)],
                [q * (p - 1), q * (q - 1)]]

    def closed_form_d(self, values):
        p, q, u, v = values['p'], values['q'], values['u'], values['v']
        return u * u * p * (p - 1) + v * v * q * (q - 1) + 2 * u * v * q * (p - 1) + u + v

    def representative(self, values):
        p, q, u, v = values['p'], values['q'], values['u'], values['v']
        f = monomial_product(['y'], [branch_factor(p, p - 1, i) for i in range(1, u + 1)]
                             + [branch_factor(q, q - 1, i) for i in range(1, v + 1)])
        g = monomial_product(['x'], [branch_factor(p, p - 1, j) for j in range(u + 1, 2 * u + 1)]
                             + [branch_factor(q, q - 1, j) for j in range(v + 1, 2 * v + 1)])
        return f"{f} · conj({g})", 2 * max(u, v) + 1


class FamilyIxIxI(SplicedFamily):
    """(I-I-I)：三個 (I) 串接，第二條拼接邊權重為 (q, r-1)"""

    family_id = FamilyId.I_I_I
    param_names = ('p', 'q', 'r', 'u', 'v', 'w')
    bounds = {
        'p': (lambda values: 2, "p >= 2"),
        'q': (lambda values: values['p'] + 1, "p < q"),
        'r': (lambda values: values['q'] + 1, "q < r"),
        'u': (lambda values: 1, "u >= 1"),
        'v': (lambda values: 1, "v >= 1"),
        'w': (lambda values: 1, "w >= 1"),
    }

    def diagram_layout(self, values):
        p, q, r = values['p'], values['q'], values['r']
        u, v, w = values['u'], values['v'], values['w']
        leaves = [leaf('a', 'n1', p - 1, 1)] + cable_leaves('c', 'n1', u, 1) + cable_leaves('d', 'n1', u, -1)
        leaves += cable_leaves('e', 'n2', v, 1) + cable_leaves('f', 'n2', v, -1)
        leaves += [leaf('b', 'n3', r, -1)] + cable_leaves('g', 'n3', w, 1) + cable_leaves('h', 'n3', w, -1)
        edges = [_splice_edge('n1', 'n2', p, q - 1, 'gamma'),
                 _splice_edge('n2', 'n3', q, r - 1, 'theta')]
        return {'nodes': ['n1', 'n2', 'n3'], 'leaves': leaves, 'edges': edges}

    def monodromy_factors(self, values):
        p, q, r = values['p'], values['q'], values['r']
        u, v, w = values['u'], values['v'], values['w']
        return ([('a', -(p - 1))] + cable_factors('c', u, -1) + cable_factors('d', u, 1)
                + [('gamma', -(q - p))] + cable_factors('e', v, -1) + cable_factors('f', v, 1)
                + [('theta', -(r - q)), ('b', r)] + cable_factors('g', w, -1) + cable_factors('h', w, 1))

    def homology_basis(self, values):
        p, q, r = values['p'], values['q'], values['r']
        u, v, w = values['u'], values['v'], values['w']
        z1 = combination(('gamma1', 1), *[(n, 1) for n in _cables(('c', u), ('d', u))], (f"a{p - 1}", -1))
        z2 = combination(('theta1', 1), *[(n, 1) for n in _cables(('e', v), ('f', v))], (f"gamma{q - p}", -1))
        z3 = combination(('b1', 1), *[(n, 1) for n in _cables(('g', w), ('h', w))], (f"theta{r - q}", -1))
        return (difference_chain('a', p - 2) + difference_chain('gamma', q - p - 1)
                + difference_chain('theta', r - q - 1) + difference_chain('b', r - 1) + [z1, z2, z3])

    def displayed_matrix(self, values):
        p, q, r = values['p'], values['q'], values['r']
        form = FormBuilder()
        _, a_last = form.add_block(self.j(p - 2))
        g_first, g_last = form.add_block(self.j(q - p - 1))
        t_first, t_last = form.add_block(self.j(r - q - 1))
        b_first, _ = form.add_block(self.jt(r - 1))
        z1 = form.add_generator(2)
        z2 = form.add_generator(2)
        z3 = form.add_generator(0)
        form.couple(z1, z2, self._coupling(q == p + 1, -1))
        form.couple(z2, z3, self._coupling(r == q + 1, -1))
        form.couple(a_last, z1, 1)
        form.couple(g_first, z1, 1)
        form.couple(g_last, z2, 1)
        form.couple(t_first, z2, 1)
        form.couple(t_last, z3, 1)
        form.couple(b_first, z3, -1)
        return form.rows()

    def chern_tail(self, values):
        return (-2 * values['u'], -2 * values['v'], -2 * values['w'])

    def euler_characteristic(self, values):
        return 2 * values['r'] - 1

    def negative_twists(self, values):
        return values['r'] + values['u'] + values['v'] + values['w'] - 1

    def expected_signature(self, values):
        return 0

    def expected_determinant(self, values):
        return (-1) ** (values['r'] - 1)

    def trailing_inverse(self, values):
        p, q, r = values['p'], values['q'], values['r']
        return [[p * (p - 1), q * (p - 1), r * (p - 1)],
                [q * (p - 1), q * (q - 1), r * (q - 1)],
                [r * (p - 1), r * (q - 1), r * (r - 1)]]

    def closed_form_d(self, values):
        p, q, r = values['p'], values['q'], values['r']
        u, v, w = values['u'], values['v'], values['w']
        return (u * u * p * (p - 1) + v * v * q * (q - 1) + w * w * r * (r - 1)
                + 2 * u * v * q * (p - 1) + 2 * u * w * r * (p - 1) + 2 * v * w * r * (q - 1)
                + u + v + w)


class FamilyIIxI(SplicedFamily):
    """(II-I)：q = 2 的 (II) 的權重 1 分支與 (I) 的 S1 拼接"""

    family_id = FamilyId.II_I
    param_names = ('p', 'u', 'v')
    bounds = {
        'p': (lambda values: 3, "p >= 3"),
        'u': (lambda values: 1, "u >= 1"),
        'v': (lambda values: 1, "v >= 1"),
    }

    def diagram_layout(self, values):
        p, u, v = values['p'], values['u'], values['v']
        leaves = [leaf('a', 'n1', p - 1, 1)] + cable_leaves('c', 'n1', u, 1) + cable_leaves('d', 'n1', u, -1)
        leaves += [leaf('b', 'n2', 2, 1)] + cable_leaves('e', 'n2', v - 1, 1) + cable_leaves('f', 'n2', v, -1)
        return {'nodes': ['n1', 'n2'], 'leaves': leaves,
                'edges': [_splice_edge('n1', 'n2', p, 1, 'gamma')]}

    def monodromy_factors(self, values):
        p, u, v = values['p'], values['u'], values['v']
        return ([('a', -(p - 1))] + cable_factors('c', u, -1) + cable_factors('d', u, 1)
                + [('gamma', p - 2), ('b', -2)] + cable_factors('e', v - 1, -1) + cable_factors('f', v, 1))

    def homology_basis(self, values):
        p, u, v = values['p'], values['u'], values['v']
        z1 = combination(('gamma1', 1), *[(n, 1) for n in _cables(('c', u), ('d', u))], (f"a{p - 1}", -1))
        z2 = combination(('b1', 1), *[(n, 1) for n in _cables(('e', v - 1), ('f', v))], (f"gamma{p - 2}", -1))
        return (difference_chain('a', p - 2) + difference_chain('gamma', p - 3)
                + difference_chain('b', 1) + [z1, z2])

    def displayed_matrix(self, values):
        p = values['p']
        form = FormBuilder()
        _, a_last = form.add_block(self.j(p - 2))
        g_first, g_last = form.add_block(self.jt(p - 3))
        b_first, _ = form.add_block(self.j(1))
        z1 = form.add_generator(0)
        z2 = form.add_generator(-1)
        form.couple(z1, z2, self._coupling(p == 3, 1))
        form.couple(a_last, z1, 1)
        form.couple(g_first, z1, -1)
        form.couple(g_last, z2, -1)
        form.couple(b_first, z2, 1)
        return form.rows()

    def chern_tail(self, values):
        return (-2 * values['u'], -(2 * values['v'] - 1))

    def euler_characteristic(self, values):
        return 2 * values['p'] - 1

    def negative_twists(self, values):
        return values['p'] + values['u'] + values['v']

    def expected_signature(self, values):
        return 2

    def expected_determinant(self, values):
        return (-1) ** values['p']

    def trailing_inverse(self, values):
        p = values['p']
        return [[p * (p - 1), 2 * (p - 1)],
                [2 * (p - 1), 2]]

    def closed_form_d(self, values):
        p, u, v = values['p'], values['u'], values['v']
        return u * u * p * (p - 1) + 2 * v * v + 4 * u * v * (p - 1) - 2 * u * (p - 1) - 2 * v + u + v

    def published_d(self, values):
        p, u, v = values['p'], values['u'], values['v']
        return (u * u * p * (p - 1) + 2 * v * v + 2 * u * v * (p - 1) + 2 * u * (v - 1) * (p - 1)
                - 2 * v + u + v)


class FamilyIIIxI(SplicedFamily):
    """(III-I)：(III) 的權重 3 分支與 (I) 的 S2 (權重 p-1) 拼接"""

    family_id = FamilyId.III_I
    param_names = ('p', 'u', 'v')
    bounds = {
        'p': (lambda values: Config.III_I_STRICT_MIN_P, f"p >= {Config.III_I_STRICT_MIN_P}"),
        'u': (lambda values: 1, "u >= 1"),
        'v': (lambda values: 0, "v >= 0"),
    }
    relaxed_bounds = {
        'p': (lambda values: Config.III_I_SEARCH_MIN_P, f"p >= {Config.III_I_SEARCH_MIN_P}"),
    }

    def diagram_layout(self, values):
        p, u, v = values['p'], values['u'], values['v']
        leaves = [leaf('a', 'n1', p, -1)] + cable_leaves('c', 'n1', u, 1) + cable_leaves('d', 'n1', u, -1)
        leaves += [leaf('b', 'n2', 2, -1)] + cable_leaves('e', 'n2', v + 1, 1) + cable_leaves('f', 'n2', v, -1)
        return {'nodes': ['n1', 'n2'], 'leaves': leaves,
                'edges': [_splice_edge('n1', 'n2', p - 1, 3, 'gamma')]}

    def monodromy_factors(self, values):
        p, u, v = values['p'], values['u'], values['v']
        return ([('a', p)] + cable_factors('c', u, -1) + cable_factors('d', u, 1)
                + [('gamma', -(p - 3)), ('b', 2)] + cable_factors('e', v + 1, -1) + cable_factors('f', v, 1))

    def homology_basis(self, values):
        p, u, v = values['p'], values['u'], values['v']
        z1 = combination(('gamma1', 1), *[(n, -1) for n in _cables(('c', u), ('d', u))], (f"a{p}", -1))
        z2 = combination(('b1', 1), *[(n, -1) for n in _cables(('e', v + 1), ('f', v))], (f"gamma{p - 3}", -1))
        return (difference_chain('a', p - 1) + difference_chain('gamma', p - 4)
                + difference_chain('b', 1) + [z1, z2])

    def displayed_matrix(self, values):
        p = values['p']
        form = FormBuilder()
        _, a_last = form.add_block(self.jt(p - 1))
        g_first, g_last = form.add_block(self.j(p - 4))
        b_first, _ = form.add_block(self.jt(1))
        z1 = form.add_generator(0)
        z2 = form.add_generator(1)
        form.couple(z1, z2, self._coupling(p == 4, -1))
        form.couple(a_last, z1, -1)
        form.couple(g_first, z1, 1)
        form.couple(g_last, z2, 1)
        form.couple(b_first, z2, -1)
        return form.rows()

    def chern_tail(self, values):
        return (2 * values['u'], 2 * values['v'] + 1)

    def euler_characteristic(self, values):
        return 2 * values['p'] - 1

    def negative_twists(self, values):
        return values['p'] + values['u'] + values['v'] - 2

    def expected_signature(self, values):
        return -2

    def expected_determinant(self, values):
        return (-1) ** values['p']

    def trailing_inverse(self, values):
        p = values['p']
        return [[p * (p - 1), 2 * p],
                [2 * p, 6]]

    def closed_form_d(self, values):
        p, u, v = values['p'], values['u'], values['v']
        return u * u * p * (p - 1) + 6 * v * v + 2 * p * u * (2 * v + 1) + 7 * v + u + 2

    def published_d(self, values):
        p, u, v = values['p'], values['u'], values['v']
        return u * u * p * (p - 1) + 6 * v * v + 2 * p * u * (2 * v + 1) + 6 * v + u + v + 2


class FamilyIIxIII(SplicedFamily):
    """(II-III)：q = 2 的 (II) 的權重 1 分支與 (III) 的權重 3 分支拼接"""

    family_id = FamilyId.II_III
    param_names = ('u', 'v')
    bounds = {
        'u': (lambda values: 1, "u >= 1"),
        'v': (lambda values: 0, "v >= 0"),
    }

    def diagram_layout(self, values):
        u, v = values['u'], values['v']
        leaves = [leaf('a', 'n1', 2, 1)] + cable_leaves('c', 'n1', u - 1, 1) + cable_leaves('d', 'n1', u, -1)
        leaves += [leaf('b', 'n2', 2, -1)] + cable_leaves('e', 'n2', v + 1, 1) + cable_leaves('f', 'n2', v, -1)
        return {'nodes': ['n1', 'n2'], 'leaves': leaves,
                'edges': [_splice_edge('n1', 'n2', 1, 3, 'gamma')]}

    def monodromy_factors(self, values):
        u, v = values['u'], values['v']
        return ([('a', -2)] + cable_factors('c', u - 1, -1) + cable_factors('d', u, 1)
                + [('gamma', 1), ('b', 2)] + cable_factors('e', v + 1, -1) + cable_factors('f', v, 1))

    def homology_basis(self, values):
        u, v = values['u'], values['v']
        z1 = combination(('gamma1', 1), *[(n, -1) for n in _cables(('c', u - 1), ('d', u))], ('a2', -1))
        z2 = combination(('b1', 1), *[(n, -1) for n in _cables(('e', v + 1), ('f', v))], ('gamma1', -1))
        return difference_chain('a', 1) + difference_chain('b', 1) + [z1, z2]

    def displayed_matrix(self, values):
        form = FormBuilder()
        a_first, _ = form.add_block(self.j(1))
        b_first, _ = form.add_block(self.jt(1))
        z1 = form.add_generator(-1)
        z2 = form.add_generator(-1)
        form.couple(z1, z2, 1)
        form.couple(a_first, z1, 1)
        form.couple(b_first, z2, -1)
        return form.rows()

    def chern_tail(self, values):
        return (2 * values['u'] - 1, 2 * values['v'] + 1)

    def euler_characteristic(self, values):
        return 5

    def negative_twists(self, values):
        return values['u'] + values['v'] + 2

    def expected_signature(self, values):
        return 0

    def expected_determinant(self, values):
        return 1

    def trailing_inverse(self, values):
        return [[2, 4], [4, 6]]

    def closed_form_d(self, values):
        u, v = values['u'], values['v']
        return 2 * u * u + 6 * v * v + 8 * u * v + 3 * u + 3 * v

    def published_d(self, values):
        u, v = values['u'], values['v']
        return 2 * u * u + 6 * v * v + 4 * u * v + 3 * v + 3 * u
