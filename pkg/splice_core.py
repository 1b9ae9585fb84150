#!/usr/bin/env python3
"""
拼接圖核心

八個參數族的拼接圖、連環數、纖維度、拼接相容性、
邊界扭轉與分離環面扭轉，以及單值化字的生成。
拼接圖以 networkx 的樹表示：Seifert 節點之間的邊兩端各帶權重，
節點到箭頭葉的邊在節點端帶權重，葉帶重數。
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Dict, List, Optional, Tuple

import networkx as nx
from loguru import logger

from families import SPLICED_FAMILIES, FamilyId, FamilyParams, get_family
from utils.errors import NotFiberedError, UnsupportedFamilyError

VIRTUAL_LEAF = '_spliced'


class SpliceDiagram:
    """帶權重的拼接圖（建構後不可變）"""

    def __init__(self, layout: Dict, family: Optional[FamilyId] = None):
        self.family = family
        self.layout = json.loads(json.dumps(layout))
        graph = nx.Graph()
        for node in layout['nodes']:
            graph.add_node(node, kind='node')
        for item in layout['leaves']:
            if item['multiplicity'] == 0:
                raise ValueError(f"箭頭 {item['id']} 的重數不可為 0")
            graph.add_node(item['id'], kind='leaf', multiplicity=item['multiplicity'])
            graph.add_edge(item['node'], item['id'], weights={item['node']: item['weight']})
        for edge in layout['edges']:
            first, second = edge['ends']
            graph.add_edge(first, second,
                           weights={first: edge['weights'][0], second: edge['weights'][1]},
                           curve=edge.get('curve'))
        if not nx.is_tree(graph):
            raise ValueError("拼接圖必須是樹")
        self.graph = nx.freeze(graph)

    @property
    def nodes(self) -> List[str]:
        return list(self.layout['nodes'])

    @property
    def leaves(self) -> List[str]:
        return [item['id'] for item in self.layout['leaves']]

    @property
    def splice_edges(self) -> List[Tuple[str, str]]:
        return [tuple(edge['ends']) for edge in self.layout['edges']]

    def is_leaf(self, vertex: str) -> bool:
        return self.graph.nodes[vertex]['kind'] == 'leaf'

    def multiplicity(self, leaf: str) -> int:
        return self.graph.nodes[leaf]['multiplicity']

    def node_of(self, leaf: str) -> str:
        return next(iter(self.graph.neighbors(leaf)))

    def leaf_weight(self, leaf: str) -> int:
        return self.weight_at(self.node_of(leaf), leaf)

    def weight_at(self, node: str, neighbor: str) -> int:
        """節點 node 在通往 neighbor 那條邊上的權重"""
        return self.graph.edges[node, neighbor]['weights'][node]

    def edge_curve(self, first: str, second: str) -> Optional[str]:
        return self.graph.edges[first, second].get('curve')

    def other_weights(self, node: str, *excluded: str) -> int:
        """節點上除了 excluded 方向之外所有權重的乘積（空乘積為 1）"""
        return prod(self.weight_at(node, x) for x in self.graph.neighbors(node) if x not in excluded)

    def __repr__(self):
        return f"SpliceDiagram(family={self.family}, nodes={len(self.nodes)}, leaves={len(self.leaves)})"


@dataclass(frozen=True)
class MonodromyWord:
    """單值化字：有序的 (曲線標籤, 扭轉指數) 因子，正指數為右手 Dehn 扭轉"""

    factors: Tuple[Tuple[str, int], ...]
    page_punctures: int

    def exponent(self, label: str) -> int:
        return sum(e for name, e in self.factors if name == label)

    def render(self) -> str:
        return " · ".join(f"{label}^{exponent}" for label, exponent in self.factors)


def build_family_diagram(family, params: FamilyParams) -> SpliceDiagram:
    """依族與參數建立拼接圖；參數超出定義域時拋出 ParameterDomainError"""
    family_def = get_family(family)
    values = family_def.check_domain(params)
    return SpliceDiagram(family_def.diagram_layout(values), family_def.family_id)


def _path_product(diagram: SpliceDiagram, path: List[str]) -> int:
    result = 1
    for index in range(1, len(path) - 1):
        result *= diagram.other_weights(path[index], path[index - 1], path[index + 1])
    return result


def linking_number(diagram: SpliceDiagram, leaf_i: str, leaf_j: str) -> int:
    """兩個箭頭的（無號）連環數：路徑上每個節點取不在路徑上的權重之乘積"""
    if leaf_i == leaf_j:
        raise ValueError("linking_number 需要兩個不同的箭頭")
    for leaf in (leaf_i, leaf_j):
        if leaf not in diagram.graph or not diagram.is_leaf(leaf):
            raise ValueError(f"{leaf} 不是拼接圖的箭頭")
    return _path_product(diagram, nx.shortest_path(diagram.graph, leaf_i, leaf_j))


def _fiber_linking(diagram: SpliceDiagram, node: str, leaf: str) -> int:
    # 節點上的一般纖維視為權重 1 的分支
    path = nx.shortest_path(diagram.graph, node, leaf)
    return diagram.other_weights(node, path[1]) * _path_product(diagram, path)


def fiber_degree(diagram: SpliceDiagram, node: str) -> int:
    """l = 一般纖維與多重鏈環的連環數；每個節點 l != 0 時多重鏈環纖維化"""
    if node not in diagram.nodes:
        raise ValueError(f"拼接圖沒有節點 {node}")
    return sum(diagram.multiplicity(leaf) * _fiber_linking(diagram, node, leaf) for leaf in diagram.leaves)


def is_fibered(diagram: SpliceDiagram) -> bool:
    return all(fiber_degree(diagram, node) != 0 for node in diagram.nodes)


def leaf_prime(diagram: SpliceDiagram, leaf: str) -> int:
    """m' = Σ_{j≠i} m_j · lk(i, j)，即多重鏈環在經線 λ_i 上的取值"""
    return sum(diagram.multiplicity(other) * linking_number(diagram, leaf, other)
               for other in diagram.leaves if other != leaf)


def check_splice_compatibility(d1: SpliceDiagram, leaf1: str, d2: SpliceDiagram, leaf2: str) -> bool:
    """m0 = (m̃0)' 且 m̃0 = (m0)' 時兩個箭頭可以拼接"""
    m0, m0_prime = d1.multiplicity(leaf1), leaf_prime(d1, leaf1)
    mt0, mt0_prime = d2.multiplicity(leaf2), leaf_prime(d2, leaf2)
    return m0 == mt0_prime and mt0 == m0_prime


def boundary_twist(diagram: SpliceDiagram, leaf: str) -> Fraction:
    """邊界附近單值化流的扭轉量 -(δ/(m·l))·α"""
    node = diagram.node_of(leaf)
    degree = fiber_degree(diagram, node)
    if degree == 0:
        raise NotFiberedError(f"節點 {node} 的纖維度為 0")
    m = diagram.multiplicity(leaf)
    delta = gcd(m, leaf_prime(diagram, leaf))
    return Fraction(-delta * diagram.leaf_weight(leaf), m * degree)


def _splice_component(diagram: SpliceDiagram, node: str, other: str, multiplicity: int) -> SpliceDiagram:
    """沿 node-other 邊切開，取 node 這一側，並在 node 上補回被拼接掉的箭頭"""
    cut = nx.Graph(diagram.graph)
    cut.remove_edge(node, other)
    side = nx.node_connected_component(cut, node)
    layout = {
        'nodes': [n for n in diagram.nodes if n in side],
        'leaves': [item for item in diagram.layout['leaves'] if item['id'] in side],
        'edges': [edge for edge in diagram.layout['edges']
                  if edge['ends'][0] in side and edge['ends'][1] in side],
    }
    layout['leaves'].append({'id': VIRTUAL_LEAF, 'node': node,
                             'weight': diagram.weight_at(node, other), 'multiplicity': multiplicity})
    return SpliceDiagram(layout, diagram.family)


def separating_torus_twist(family, params: FamilyParams, edge: int = 0) -> Fraction:
    """分離環面上的扭轉 τ = -(δ0/(l1·l2))·(α0·β0 - Πα_i·Πβ_j)"""
    family_id = FamilyId.parse(family)
    if family_id not in SPLICED_FAMILIES:
        raise UnsupportedFamilyError(family_id, 'separating_torus_twist')
    diagram = build_family_diagram(family_id, params)
    edges = diagram.splice_edges
    if not 0 <= edge < len(edges):
        raise ValueError(f"({family_id}) 沒有第 {edge} 條拼接邊")
    n1, n2 = edges[edge]

    # 兩側被拼接箭頭的經線取值；相容條件給出彼此的重數
    m0_prime = leaf_prime(_splice_component(diagram, n1, n2, 1), VIRTUAL_LEAF)
    mt0_prime = leaf_prime(_splice_component(diagram, n2, n1, 1), VIRTUAL_LEAF)
    m0, mt0 = mt0_prime, m0_prime

    l1 = fiber_degree(_splice_component(diagram, n1, n2, m0), n1)
    l2 = fiber_degree(_splice_component(diagram, n2, n1, mt0), n2)
    if l1 == 0 or l2 == 0:
        raise NotFiberedError(f"({family_id}) 拼接分量的纖維度為 0")

    delta0 = gcd(m0, m0_prime)
    alpha0, beta0 = diagram.weight_at(n1, n2), diagram.weight_at(n2, n1)
    rest = diagram.other_weights(n1, n2) * diagram.other_weights(n2, n1)
    return Fraction(-delta0, l1 * l2) * (alpha0 * beta0 - rest)


def monodromy_word(family, params: FamilyParams) -> MonodromyWord:
    """單值化字，因子順序與發表的公式一致"""
    family_def = get_family(family)
    values = family_def.check_domain(params)
    return MonodromyWord(tuple(family_def.monodromy_factors(values)), family_def.page_punctures(values))


def negative_twist_count(word: MonodromyWord) -> int:
    """k：負指數因子的 |指數| 之和"""
    return sum(-exponent for _, exponent in word.factors if exponent < 0)


def real_algebraic_representative(family, params: FamilyParams) -> str:
    """f·conj(g) 的純文字表示；只有 (I)、(II)、(III)、(I-I) 有顯式多項式"""
    formula, _ = _representative(family, params)
    return formula


def representative_root_order(family, params: FamilyParams) -> int:
    """η 的階（所有出現的 η 冪次互不相同）"""
    _, order = _representative(family, params)
    return order


def _representative(family, params):
    family_def = get_family(family)
    values = family_def.check_domain(params)
    result = family_def.representative(values)
    if result is None:
        raise UnsupportedFamilyError(family_def.family_id, 'real_algebraic_representative')
    return result


def word_twist_report(family, params: FamilyParams) -> Dict:
    """比對單值化字的指數與拼接圖算出的扭轉量

    邊界平行曲線的指數應等於 boundary_twist，分離曲線的指數應等於 τ。
    """
    family_id = FamilyId.parse(family)
    diagram = build_family_diagram(family_id, params)
    word = monodromy_word(family_id, params)
    mismatches = []

    for leaf in diagram.leaves:
        twist = boundary_twist(diagram, leaf)
        if twist != word.exponent(leaf):
            mismatches.append({'curve': leaf, 'word': word.exponent(leaf), 'diagram': str(twist)})

    for index, (n1, n2) in enumerate(diagram.splice_edges):
        curve = diagram.edge_curve(n1, n2)
        tau = separating_torus_twist(family_id, params, index)
        if tau != word.exponent(curve):
            mismatches.append({'curve': curve, 'word': word.exponent(curve), 'diagram': str(tau)})

    if mismatches:
        logger.warning(f"⚠️ ({family_id}) {params.as_dict()} 扭轉不一致: {mismatches}")
    return {'success': not mismatches, 'family': str(family_id), 'mismatches': mismatches}


def diagram_to_json(diagram: SpliceDiagram) -> str:
    """固定欄位順序的 JSON 文件（節點、帶兩端權重的邊、帶重數的葉）"""
    document = {
        'family': str(diagram.family) if diagram.family else None,
        'nodes': diagram.layout['nodes'],
        'edges': [{'ends': e['ends'], 'weights': e['weights'], 'curve': e.get('curve')}
                  for e in diagram.layout['edges']],
        'leaves': [{'id': item['id'], 'node': item['node'], 'weight': item['weight'],
                    'multiplicity': item['multiplicity']} for item in diagram.layout['leaves']],
    }
    return json.dumps(document, indent=2, ensure_ascii=False)


def diagram_from_json(text: str) -> SpliceDiagram:
    document = json.loads(text)
    family = FamilyId.parse(document['family']) if document.get('family') else None
    return SpliceDiagram(document, family)
