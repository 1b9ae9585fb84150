"""
錯誤類型

所有計算錯誤都繼承 D3Error，CLI 依類型對應到不同的退出碼。
"""


class D3Error(Exception):
    """計算錯誤的基類"""


class ParameterDomainError(D3Error, ValueError):
    """參數超出族的定義域"""

    def __init__(self, family, constraint):
        self.family = family
        self.constraint = constraint
        super().__init__(f"({family}) requires {constraint}")


class UnsupportedFamilyError(D3Error, ValueError):
    """該操作不支援此族"""

    def __init__(self, family, operation):
        self.family = family
        self.operation = operation
        super().__init__(f"{operation} is not available for family ({family})")


class NotFiberedError(D3Error):
    """節點的纖維度 l 為 0"""


class SingularMatrixError(D3Error, ZeroDivisionError):
    """矩陣不可逆"""


class InvalidMoveError(D3Error, ValueError):
    """移動後的狀態離開 p < q < r 的定義域"""


class ConsistencyError(D3Error):
    """內部一致性檢查失敗（例如 d3 不是半整數、單調性證書不成立）"""
