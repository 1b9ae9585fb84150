import os
from dotenv import load_dotenv

# 載入環境變數
load_dotenv()


def _env_int(name, default):
    """讀取整數環境變數，格式錯誤時回退預設值"""
    value = os.getenv(name)
    if value is None or value.strip() == '':
        return default
    try:
        return int(value)
    except ValueError:
        return default


class Config:
    """配置管理類"""

    # 平行計算
    WORKERS = max(1, _env_int('D3_WORKERS', 1))  # 枚舉/交叉驗證的進程數

    # 日誌設定
    LOG_DIR = os.getenv('D3_LOG_DIR', 'logs')
    LOG_LEVEL = os.getenv('D3_LOG_LEVEL', 'INFO').upper()
    LOG_TO_FILE = os.getenv('D3_LOG_TO_FILE', '1') not in ('0', 'false', 'False', 'no')

    # 搜尋預設值
    DEFAULT_MAX_D = _env_int('D3_DEFAULT_MAX_D', 500)
    DEFAULT_PARAM_BOUND = 4
    MOVE_GRID_BOUND = 40

    # III-I 在搜尋中以閉式公式計算時的最小 p（矩陣路徑仍要求 p >= 4）
    III_I_SEARCH_MIN_P = _env_int('D3_III_I_SEARCH_MIN_P', 2)
    III_I_STRICT_MIN_P = 4

    # 已發表的九個例外值
    KNOWN_EXCEPTIONS = (4, 11, 17, 19, 47, 61, 79, 95, 109)
    # 嚴格定義域 (III-I 只取 p >= 4) 下額外缺少的值；35 仍由其他族實現
    STRICT_EXTRA_EXCEPTIONS = (9, 49)

    # (I-I-I) 覆蓋聲明的起點
    COVERAGE_START = 431
    COVERAGE_EXCEPTION = 461

    # 輸出格式
    OUTPUT_FORMATS = ('json', 'csv', 'md', 'plain')
    DEFAULT_FORMAT = 'json'
