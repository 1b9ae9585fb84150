"""
Seifert 多重鏈環族 (I)、(II)、(III)

單一節點的拼接圖；l = 1，頁面為多孔球面。
"""

from typing import Dict, List, Tuple

from families.base_family import (
    BaseFamily, FamilyId, FormBuilder, branch_factor, cable_factors, cable_leaves,
    combination, difference_chain, indexed, leaf, monomial_product,
)


class FamilyI(BaseFamily):
    """(I)：權重 p、p-1 的兩條奇異纖維，加上 u 條正向與 u 條負向的 (p, p-1) 纜線"""

    family_id = FamilyId.I
    param_names = ('p', 'u')
    bounds = {
        'p': (lambda values: 2, "p >= 2"),
        'u': (lambda values: 1, "u >= 1"),
    }

    def diagram_layout(self, values):
        p, u = values['p'], values['u']
        leaves = [leaf('a', 'n1', p, -1), leaf('b', 'n1', p - 1, 1)]
        leaves += cable_leaves('c', 'n1', u, 1) + cable_leaves('d', 'n1', u, -1)
        return {'nodes': ['n1'], 'leaves': leaves, 'edges': []}

    def monodromy_factors(self, values):
        p, u = values['p'], values['u']
        return [('a', p), ('b', -(p - 1))] + cable_factors('c', u, -1) + cable_factors('d', u, 1)

    def homology_basis(self, values):
        p, u = values['p'], values['u']
        z = combination(('b1', 1), *[(name, -1) for name in indexed('c', u) + indexed('d', u)], (f"a{p}", -1))
        return difference_chain('a', p - 1) + difference_chain('b', p - 2) + [z]

    def displayed_matrix(self, values):
        p = values['p']
        form = FormBuilder()
        a_first, a_last = form.add_block(self.jt(p - 1))
        b_first, _ = form.add_block(self.j(p - 2))
        z = form.add_generator(0)
        form.couple(a_last, z, -1)
        form.couple(b_first, z, 1)
        return form.rows()

    def chern_tail(self, values):
        return (2 * values['u'],)

    def euler_characteristic(self, values):
        return 2 * values['p'] - 1

    def negative_twists(self, values):
        return values['p'] + values['u'] - 1

    def expected_signature(self, values):
        return 0

    def expected_determinant(self, values):
        return (-1) ** (values['p'] - 1)

    def trailing_inverse(self, values):
        p = values['p']
        return [[p * (p - 1)]]

    def closed_form_d(self, values):
        p, u = values['p'], values['u']
        return u * u * p * (p - 1) + u

    def representative(self, values):
        p, u = values['p'], values['u']
        f = monomial_product(['y'], [branch_factor(p, p - 1, i) for i in range(1, u + 1)])
        g = monomial_product(['x'], [branch_factor(p, p - 1, j) for j in range(u + 1, 2 * u + 1)])
        return f"{f} · conj({g})", 2 * u + 1


class FamilyII(BaseFamily):
    """(II)：權重 q 的奇異纖維與 2u 條正則纖維"""

    family_id = FamilyId.II
    param_names = ('q', 'u')
    bounds = {
        'q': (lambda values: 2, "q >= 2"),
        'u': (lambda values: 1, "u >= 1"),
    }

    def diagram_layout(self, values):
        q, u = values['q'], values['u']
        leaves = [leaf('a', 'n1', q, 1), leaf('b', 'n1', 1, 1)]
        leaves += cable_leaves('c', 'n1', u - 1, 1) + cable_leaves('d', 'n1', u, -1)
        return {'nodes': ['n1'], 'leaves': leaves, 'edges': []}

    def monodromy_factors(self, values):
        q, u = values['q'], values['u']
        return [('a', -q), ('b', -1)] + cable_factors('c', u - 1, -1) + cable_factors('d', u, 1)

    def homology_basis(self, values):
        q, u = values['q'], values['u']
        z = combination(('b1', 1), *[(name, -1) for name in indexed('c', u - 1) + indexed('d', u)], (f"a{q}", -1))
        return difference_chain('a', q - 1) + [z]

    def displayed_matrix(self, values):
        form = FormBuilder()
        _, a_last = form.add_block(self.j(values['q'] - 1))
        z = form.add_generator(1)
        form.couple(a_last, z, 1)
        return form.rows()

    def chern_tail(self, values):
        return (2 * values['u'] - 1,)

    def euler_characteristic(self, values):
        return values['q'] + 1

    def negative_twists(self, values):
        return values['q'] + values['u']

    def expected_signature(self, values):
        return values['q']

    def expected_determinant(self, values):
        return 1

    def trailing_inverse(self, values):
        return [[values['q']]]

    def closed_form_d(self, values):
        q, u = values['q'], values['u']
        return u * (u - 1) * q + u

    def representative(self, values):
        q, u = values['q'], values['u']
        f = monomial_product(['x', 'y'], [branch_factor(q, 1, i) for i in range(1, u + 1)])
        g_factors = [branch_factor(q, 1, u + j) for j in range(1, u)]
        if not g_factors:
            return f, 2 * u
        return f"{f} · conj({monomial_product([], g_factors)})", 2 * u


class FamilyIII(BaseFamily):
    """(III)：權重 3、2 的奇異纖維，u+1 條正向與 u 條負向的 (3, 2) 纜線"""

    family_id = FamilyId.III
    param_names = ('u',)
    bounds = {
        'u': (lambda values: 0, "u >= 0"),
    }

    def diagram_layout(self, values):
        u = values['u']
        leaves = [leaf('a', 'n1', 3, -1), leaf('b', 'n1', 2, -1)]
        leaves += cable_leaves('c', 'n1', u + 1, 1) + cable_leaves('d', 'n1', u, -1)
        return {'nodes': ['n1'], 'leaves': leaves, 'edges': []}

    def monodromy_factors(self, values):
        u = values['u']
        return [('a', 3), ('b', 2)] + cable_factors('c', u + 1, -1) + cable_factors('d', u, 1)

    def homology_basis(self, values):
        u = values['u']
        z = combination(('b1', 1), *[(name, -1) for name in indexed('c', u + 1) + indexed('d', u)], ('a3', -1))
        return difference_chain('a', 2) + difference_chain('b', 1) + [z]

    def displayed_matrix(self, values):
        form = FormBuilder()
        _, a_last = form.add_block(self.jt(2))
        b_first, _ = form.add_block(self.jt(1))
        z = form.add_generator(-1)
        form.couple(a_last, z, -1)
        form.couple(b_first, z, -1)
        return form.rows()

    def chern_tail(self, values):
        return (2 * values['u'] + 1,)

    def euler_characteristic(self, values):
        return 5

    def negative_twists(self, values):
        return values['u'] + 1

    def expected_signature(self, values):
        return -2

    def expected_determinant(self, values):
        return -1

    def trailing_inverse(self, values):
        return [[6]]

    def closed_form_d(self, values):
        u = values['u']
        return 6 * u * (u + 1) + u + 2

    def representative(self, values):
        u = values['u']
        f = monomial_product([], [branch_factor(3, 2, i) for i in range(1, u + 2)])
        g = monomial_product(['x', 'y'], [branch_factor(3, 2, u + j + 1) for j in range(1, u + 1)])
        return f"{f} · conj({g})", 2 * u + 2
