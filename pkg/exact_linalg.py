#!/usr/bin/env python3
"""
精確有理線性代數

行列式（Bareiss 無分數消去）、慣性指數/符號差（對稱合同對角化）、
秩、以及 w^T M^{-1} w 的精確計算。全程使用 fractions.Fraction，沒有浮點數。
"""

from fractions import Fraction
from math import lcm
from typing import Iterable, List, Sequence, Tuple

from utils.errors import SingularMatrixError


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class RationalMatrix:
    """稠密有理矩陣（建構後不可變）

    作為交叉形式使用時要求對稱，由呼叫者檢查。
    允許長方形矩陣（rank 用得到）。
    """

    __slots__ = ('_rows', '_shape')

    def __init__(self, rows: Iterable[Iterable]):
        converted = tuple(tuple(_to_fraction(x) for x in row) for row in rows)
        width = len(converted[0]) if converted else 0
        for row in converted:
            if len(row) != width:
                raise ValueError("矩陣各列長度不一致")
        self._rows = converted
        self._shape = (len(converted), width)

    @classmethod
    def identity(cls, n: int) -> 'RationalMatrix':
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int, m: int = None) -> 'RationalMatrix':
        m = n if m is None else m
        if n == 0:
            return cls([])
        return cls([[0] * m for _ in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self._shape

    @property
    def n(self) -> int:
        """方陣維數"""
        if self._shape[0] != self._shape[1] and self._shape[0] != 0:
            raise ValueError(f"不是方陣: {self._shape}")
        return self._shape[0]

    @property
    def rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._shape == other._shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"RationalMatrix({self.to_lists()})"

    def is_square(self) -> bool:
        return self._shape[0] == self._shape[1] or self._shape[0] == 0

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        size = self._shape[0]
        return all(self._rows[i][j] == self._rows[j][i]
                   for i in range(size) for j in range(i + 1, size))

    def transpose(self) -> 'RationalMatrix':
        rows, cols = self._shape
        return RationalMatrix([[self._rows[i][j] for i in range(rows)] for j in range(cols)])

    def __matmul__(self, other: 'RationalMatrix') -> 'RationalMatrix':
        if self._shape[1] != other._shape[0]:
            raise ValueError(f"維數不符: {self._shape} @ {other._shape}")
        cols = list(zip(*other._rows)) if other._rows else []
        return RationalMatrix([[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
                               for row in self._rows])

    def to_lists(self) -> List[List]:
        """整數元素輸出為 int，其他保持 Fraction"""
        return [[int(x) if x.denominator == 1 else x for x in row] for row in self._rows]


def j_block(n: int) -> RationalMatrix:
    """J_n：對角 2、次對角 -1 的三對角正定矩陣"""
    return RationalMatrix([[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
                           for i in range(n)])


def j_tilde_block(n: int) -> RationalMatrix:
    """J̃_n = -J_n"""
    return RationalMatrix([[-2 if i == j else (1 if abs(i - j) == 1 else 0) for j in range(n)]
                           for i in range(n)])


def s_matrix(n: int) -> RationalMatrix:
    """單位下雙對角矩陣 S_n，(i, i-1) 元素為 -(i-1)/i（1 起算）

    S_n^{-1} 是 (i, j) 元素為 j/i 的稠密下三角矩陣。
    """
    return RationalMatrix([[1 if i == j else (Fraction(-i, i + 1) if j == i - 1 else 0) for j in range(n)]
                           for i in range(n)])


def d_matrix(n: int) -> RationalMatrix:
    """D_n = diag(2, 3/2, ..., (n+1)/n)，滿足 S_n D_n S_n^T = J_n"""
    return RationalMatrix([[Fraction(i + 2, i + 1) if i == j else 0 for j in range(n)]
                           for i in range(n)])


def determinant(m: RationalMatrix) -> Fraction:
    """精確行列式

    先把每一列乘上分母的最小公倍數化成整數矩陣，再用 Bareiss 消去。
    空矩陣的行列式為 1。
    """
    if not m.is_square():
        raise ValueError(f"行列式需要方陣: {m.shape}")
    size = m.shape[0]
    if size == 0:
        return Fraction(1)

    scale = Fraction(1)
    a = []
    for row in m.rows:
        factor = lcm(*(x.denominator for x in row))
        scale *= factor
        a.append([int(x * factor) for x in row])

    sign = 1
    previous = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // previous
            a[i][k] = 0
        previous = pivot

    return Fraction(sign * a[size - 1][size - 1]) / scale


def signature(m: RationalMatrix) -> Tuple[int, int, int]:
    """慣性指數 (n_plus, n_minus, n_zero)

    對稱合同對角化：每次取非零對角元素作主元，同時消去對應的列與行。
    剩餘對角全為零但有非零非對角元素 M[i][j] 時，把第 j 列/行加到第 i 列/行，
    新的對角元素為 2·M[i][j]。
    """
    if not m.is_symmetric():
        raise ValueError("signature 需要對稱矩陣")
    size = m.shape[0]
    a = [list(row) for row in m.rows]
    n_plus = n_minus = 0

    k = 0
    while k < size:
        pivot_index = next((i for i in range(k, size) if a[i][i] != 0), None)
        if pivot_index is None:
            pair = next(((i, j) for i in range(k, size) for j in range(i + 1, size) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for col in range(size):
                a[i][col] += a[j][col]
            for row in range(size):
                a[row][i] += a[row][j]
            pivot_index = i

        if pivot_index != k:
            a[k], a[pivot_index] = a[pivot_index], a[k]
            for row in a:
                row[k], row[pivot_index] = row[pivot_index], row[k]

        pivot = a[k][k]
        if pivot > 0:
            n_plus += 1
        else:
            n_minus += 1

        for i in range(k + 1, size):
            if a[i][k] == 0:
                continue
            factor = a[i][k] / pivot
            for j in range(k, size):
                a[i][j] -= factor * a[k][j]
            for j in range(k, size):
                a[j][i] = a[i][j]
        k += 1

    return n_plus, n_minus, size - n_plus - n_minus


def rank(m: RationalMatrix) -> int:
    """有理數域上的秩（可為長方形矩陣）"""
    rows, cols = m.shape
    a = [list(row) for row in m.rows]
    result = 0
    for col in range(cols):
        pivot = next((i for i in range(result, rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[result], a[pivot] = a[pivot], a[result]
        for i in range(result + 1, rows):
            if a[i][col] != 0:
                factor = a[i][col] / a[result][col]
                for j in range(col, cols):
                    a[i][j] -= factor * a[result][j]
        result += 1
        if result == rows:
            break
    return result


def solve(m: RationalMatrix, b: Sequence) -> List[Fraction]:
    """解 m·x = b（部分主元高斯消去）"""
    size = m.n
    if len(b) != size:
        raise ValueError(f"向量長度 {len(b)} 與矩陣維數 {size} 不符")
    a = [list(row) + [_to_fraction(value)] for row, value in zip(m.rows, b)]

    for k in range(size):
        pivot = next((i for i in range(k, size) if a[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError("矩陣奇異，無法求逆")
        a[k], a[pivot] = a[pivot], a[k]
        for i in range(size):
            if i != k and a[i][k] != 0:
                factor = a[i][k] / a[k][k]
                for j in range(k, size + 1):
                    a[i][j] -= factor * a[k][j]

    return [a[i][size] / a[i][i] for i in range(size)]


def inverse(m: RationalMatrix) -> RationalMatrix:
    size = m.n
    columns = [solve(m, [1 if i == j else 0 for i in range(size)]) for j in range(size)]
    return RationalMatrix([[columns[j][i] for j in range(size)] for i in range(size)])


def quadratic_form_inverse(m: RationalMatrix, w: Sequence) -> Fraction:
    """計算 w^T m^{-1} w：先解 m·x = w，再取 w^T x"""
    if len(w) != m.n:
        raise ValueError(f"向量長度 {len(w)} 與矩陣維數 {m.n} 不符")
    if all(_to_fraction(x) == 0 for x in w):
        if m.n and determinant(m) == 0:
            raise SingularMatrixError("矩陣奇異，無法求逆")
        return Fraction(0)
    x = solve(m, w)
    return sum((_to_fraction(wi) * xi for wi, xi in zip(w, x)), Fraction(0))


def format_grid(m: RationalMatrix) -> str:
    """對齊的文字網格（除錯/CLI 用）"""
    cells = [[str(x) for x in row] for row in m.to_lists()]
    if not cells:
        return "(empty)"
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
