# Families package
from families.base_family import FAMILY_ORDER, BaseFamily, FamilyId, FamilyParams
from families.seifert_families import FamilyI, FamilyII, FamilyIII
from families.spliced_families import FamilyIIIxI, FamilyIIxI, FamilyIIxIII, FamilyIxI, FamilyIxIxI

FAMILIES = {
    FamilyId.I: FamilyI(),
    FamilyId.II: FamilyII(),
    FamilyId.III: FamilyIII(),
    FamilyId.I_I: FamilyIxI(),
    FamilyId.I_I_I: FamilyIxIxI(),
    FamilyId.II_I: FamilyIIxI(),
    FamilyId.III_I: FamilyIIIxI(),
    FamilyId.II_III: FamilyIIxIII(),
}

SPLICED_FAMILIES = (FamilyId.I_I, FamilyId.I_I_I, FamilyId.II_I, FamilyId.III_I, FamilyId.II_III)


def get_family(family) -> BaseFamily:
    """依 FamilyId 或名稱取得族物件"""
    return FAMILIES[FamilyId.parse(family)]


__all__ = [
    'FAMILIES', 'FAMILY_ORDER', 'SPLICED_FAMILIES', 'BaseFamily', 'FamilyId', 'FamilyParams', 'get_family',
]
