"""
多重鏈環族的基礎類

每個族（I、II、III 以及拼接族）把自己的拼接圖、單值化字、
H2 基底、交叉矩陣佈局與閉式公式集中在一個類裡。
其他模組只透過 BaseFamily 的介面取用這些資料。
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, fields
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from exact_linalg import j_block, j_tilde_block
from utils.errors import ParameterDomainError

# 奇異曲線與分離曲線：一條曲線可帶多次扭轉，每次扭轉一個 2-handle
MULTI_TWIST_CURVES = ('a', 'b', 'gamma', 'theta')


class FamilyId(Enum):
    """八個參數族"""

    I = 'I'
    II = 'II'
    III = 'III'
    I_I = 'I-I'
    I_I_I = 'I-I-I'
    II_I = 'II-I'
    III_I = 'III-I'
    II_III = 'II-III'

    @classmethod
    def parse(cls, text: str) -> 'FamilyId':
        """接受 'I-I-I' 與 'I_I_I' 兩種寫法，必須完全匹配"""
        if isinstance(text, FamilyId):
            return text
        normalized = str(text).strip().upper().replace('_', '-')
        for member in cls:
            if member.value == normalized:
                return member
        raise ValueError(f"未知的族: {text}")

    def __str__(self):
        return self.value


# 見證排序用的族順序
FAMILY_ORDER = (
    FamilyId.I, FamilyId.II, FamilyId.III, FamilyId.I_I,
    FamilyId.II_I, FamilyId.III_I, FamilyId.II_III, FamilyId.I_I_I,
)


@dataclass(frozen=True)
class FamilyParams:
    """族參數；未使用的欄位為 None"""

    p: Optional[int] = None
    q: Optional[int] = None
    r: Optional[int] = None
    u: Optional[int] = None
    v: Optional[int] = None
    w: Optional[int] = None

    @classmethod
    def from_dict(cls, values: Dict[str, int]) -> 'FamilyParams':
        return cls(**{k: int(v) for k, v in values.items() if v is not None})

    def as_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    def replace(self, **changes) -> 'FamilyParams':
        values = self.as_dict()
        values.update(changes)
        return FamilyParams.from_dict(values)


class FormBuilder:
    """依 J/J̃ 區塊與尾端生成元組裝對稱整數矩陣"""

    def __init__(self):
        self.size = 0
        self.entries: Dict[Tuple[int, int], int] = {}

    def add_block(self, block) -> Tuple[Optional[int], Optional[int]]:
        """加入一個對角區塊，回傳 (首列, 末列)；空區塊回傳 (None, None)"""
        rows = block.to_lists()
        if not rows:
            return None, None
        start = self.size
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                if value:
                    self.entries[(start + i, start + j)] = value
        self.size += len(rows)
        return start, self.size - 1

    def add_generator(self, square: int) -> int:
        index = self.size
        if square:
            self.entries[(index, index)] = square
        self.size += 1
        return index

    def couple(self, i: Optional[int], j: Optional[int], value: int):
        if i is None or j is None or value == 0:
            return
        self.entries[(i, j)] = value
        self.entries[(j, i)] = value

    def rows(self) -> List[List[int]]:
        return [[self.entries.get((i, j), 0) for j in range(self.size)] for i in range(self.size)]


def difference_chain(label: str, count: int) -> List[Dict[str, int]]:
    """label_j - label_{j+1}，j = 1..count"""
    return [{f"{label}{j}": 1, f"{label}{j + 1}": -1} for j in range(1, count + 1)]


def combination(*parts: Tuple[str, int]) -> Dict[str, int]:
    """把 (handle, 係數) 合併成一個整係數組合"""
    result: Dict[str, int] = {}
    for name, coefficient in parts:
        result[name] = result.get(name, 0) + coefficient
    return {k: v for k, v in result.items() if v != 0}


def indexed(label: str, count: int, start: int = 1) -> List[str]:
    return [f"{label}{i}" for i in range(start, start + count)]


def leaf(label: str, node: str, weight: int, multiplicity: int) -> Dict:
    return {'id': label, 'node': node, 'weight': weight, 'multiplicity': multiplicity}


def cable_leaves(label: str, node: str, count: int, multiplicity: int) -> List[Dict]:
    return [leaf(name, node, 1, multiplicity) for name in indexed(label, count)]


def cable_factors(label: str, count: int, exponent: int) -> List[Tuple[str, int]]:
    return [(name, exponent) for name in indexed(label, count)]


def branch_factor(exponent_x: int, exponent_y: int, root_power: int) -> str:
    """(x^a+η^k y^b)"""
    return f"({_power('x', exponent_x)}+{_power('η', root_power)} {_power('y', exponent_y)})"


def _power(symbol: str, exponent: int) -> str:
    if exponent == 1:
        return symbol
    return f"{symbol}^{exponent}"


def monomial_product(variables: List[str], factors: List[str]) -> str:
    """單項式變數以空格相連，因子直接接在後面"""
    return " ".join(variables) + "".join(factors)


class BaseFamily(ABC):
    """多重鏈環族的基礎類"""

    family_id: FamilyId
    param_names: Tuple[str, ...] = ()
    # 參數下界：name -> (下界函數, 約束描述)
    bounds: Dict[str, Tuple[Callable[[Dict[str, int]], int], str]] = {}
    # 搜尋時放寬的下界（只影響閉式公式的搜尋定義域）
    relaxed_bounds: Dict[str, Tuple[Callable[[Dict[str, int]], int], str]] = {}

    def __str__(self):
        return str(self.family_id)

    # ------------------------------------------------------------------
    # 定義域
    # ------------------------------------------------------------------
    def lower_bound(self, name: str, values: Dict[str, int], relaxed: bool = False) -> int:
        table = self.relaxed_bounds if relaxed and name in self.relaxed_bounds else self.bounds
        bound, _ = table[name]
        return bound(values)

    def check_domain(self, params: FamilyParams, relaxed: bool = False) -> Dict[str, int]:
        """檢查參數定義域，回傳參數字典；違反時拋出 ParameterDomainError 並指出約束"""
        values = params.as_dict()
        for name in values:
            if name not in self.param_names:
                raise ParameterDomainError(self.family_id, f"no parameter {name}")
        for name in self.param_names:
            if name not in values:
                raise ParameterDomainError(self.family_id, f"parameter {name}")
            table = self.relaxed_bounds if relaxed and name in self.relaxed_bounds else self.bounds
            bound, constraint = table[name]
            if values[name] < bound(values):
                raise ParameterDomainError(self.family_id, constraint)
        return values

    def minimal_params(self, given: Optional[Dict[str, int]] = None) -> FamilyParams:
        """未給定的參數依序取最小值"""
        values = dict(given or {})
        for name in self.param_names:
            if values.get(name) is None:
                values[name] = self.lower_bound(name, values)
        return FamilyParams.from_dict(values)

    def grid(self, bound: int, relaxed: bool = False) -> Iterator[FamilyParams]:
        """定義域內所有參數都 <= bound 的參數組，依字典序"""
        def walk(index: int, values: Dict[str, int]):
            if index == len(self.param_names):
                yield FamilyParams.from_dict(values)
                return
            name = self.param_names[index]
            for x in range(self.lower_bound(name, values, relaxed), bound + 1):
                yield from walk(index + 1, {**values, name: x})

        yield from walk(0, {})

    # ------------------------------------------------------------------
    # 拼接圖與單值化
    # ------------------------------------------------------------------
    @abstractmethod
    def diagram_layout(self, values: Dict[str, int]) -> Dict:
        """拼接圖的節點、葉（權重與重數）和拼接邊"""

    @abstractmethod
    def monodromy_factors(self, values: Dict[str, int]) -> List[Tuple[str, int]]:
        """單值化字的因子，依發表的順序"""

    def page_punctures(self, values: Dict[str, int]) -> int:
        return len(self.diagram_layout(values)['leaves'])

    def representative(self, values: Dict[str, int]) -> Optional[Tuple[str, int]]:
        """實代數代表 f·conj(g) 與 η 的階；沒有顯式多項式的族回傳 None"""
        return None

    # ------------------------------------------------------------------
    # 4-流形資料
    # ------------------------------------------------------------------
    def handles(self, values: Dict[str, int]) -> List[Tuple[str, int, int]]:
        """(handle 名稱, 自交數, 旋轉數)

        右手扭轉（正指數）給出 -1，左手扭轉給出 +1；
        奇異/分離曲線旋轉數為 0，纜線曲線為 -1。
        """
        result = []
        for label, exponent in self.monodromy_factors(values):
            square = -1 if exponent > 0 else 1
            if label in MULTI_TWIST_CURVES:
                for j in range(1, abs(exponent) + 1):
                    result.append((f"{label}{j}", square, 0))
            else:
                result.append((label, square, -1))
        return result

    @abstractmethod
    def homology_basis(self, values: Dict[str, int]) -> List[Dict[str, int]]:
        """H2 基底，表示為 handle 的整係數組合，順序與顯示矩陣一致"""

    @abstractmethod
    def displayed_matrix(self, values: Dict[str, int]) -> List[List[int]]:
        """J/J̃ 區塊組成的交叉矩陣"""

    @abstractmethod
    def chern_tail(self, values: Dict[str, int]) -> Tuple[int, ...]:
        """Chern 向量的非零尾端"""

    def chern_vector(self, values: Dict[str, int]) -> List[int]:
        tail = list(self.chern_tail(values))
        return [0] * (self.dimension(values) - len(tail)) + tail

    def dimension(self, values: Dict[str, int]) -> int:
        return self.euler_characteristic(values) - 1

    # ------------------------------------------------------------------
    # 閉式公式
    # ------------------------------------------------------------------
    @abstractmethod
    def euler_characteristic(self, values: Dict[str, int]) -> int:
        """χ(W)"""

    @abstractmethod
    def negative_twists(self, values: Dict[str, int]) -> int:
        """k：左手 Dehn 扭轉的個數"""

    @abstractmethod
    def expected_signature(self, values: Dict[str, int]) -> int:
        """σ(W)"""

    @abstractmethod
    def expected_determinant(self, values: Dict[str, int]) -> int:
        """det Q"""

    @abstractmethod
    def trailing_inverse(self, values: Dict[str, int]) -> List[List[int]]:
        """Q^{-1} 右下角（與 Chern 尾端對齊）的區塊"""

    @abstractmethod
    def closed_form_d(self, values: Dict[str, int]) -> int:
        """d = d3 + 1/2"""

    def published_d(self, values: Dict[str, int]) -> int:
        """按發表的印刷形式計算 d；預設與閉式相同"""
        return self.closed_form_d(values)

    def closed_form_c2(self, values: Dict[str, int]) -> int:
        tail = self.chern_tail(values)
        block = self.trailing_inverse(values)
        return sum(tail[i] * block[i][j] * tail[j] for i in range(len(tail)) for j in range(len(tail)))

    @staticmethod
    def j(n: int):
        return j_block(n)

    @staticmethod
    def jt(n: int):
        return j_tilde_block(n)
