# Utils package：日誌、錯誤類型、進程池
from utils.errors import (
    ConsistencyError, D3Error, InvalidMoveError, NotFiberedError, ParameterDomainError, SingularMatrixError,
    UnsupportedFamilyError,
)
