# 应用配置文件

import math

# 量子博弈配置
DEFAULT_SHOTS = 8192
DEFAULT_SEED = 0
MAX_SEED = 2**64 - 1
MIN_QUBITS = 1
MAX_QUBITS = 12
HELIX_QUBITS = 4

# 数值容差
NORM_TOLERANCE = 1e-12
SIMPLEX_TOLERANCE = 1e-9

# QASM 导出配置
QASM_VERSION = "2.0"
QASM_INCLUDE = "qelib1.inc"
QASM_PRECISION = 17  # 角度输出的有效数字位数

# Dirac–Solow–Swan 演化配置
DEFAULT_SCALE = 2 * math.pi
DEFAULT_T_MAX = 50.0
DEFAULT_STEPS = 500
DEFAULT_MODE = "survival"
TRAJECTORY_MODES = ["survival", "population"]
DEFAULT_PSI0 = "uniform"
PSI0_CHOICES = ["uniform", "weights"]

# CORDIS 数据配置
DEFAULT_PROJECT_COLUMN = "projectID"
DEFAULT_ACTIVITY_COLUMN = "activityType"
DEFAULT_CONTRIBUTION_COLUMN = "ecContribution"
DEFAULT_ORGANISATION_COLUMN = "organisationID"
SUPPORTED_DELIMITERS = [",", ";"]

# 活动类型到四螺旋主体的映射
ACTIVITY_TYPE_MAPPING = {
    'HES': 'academia',
    'REC': 'academia',
    'PRC': 'industry',
    'PUB': 'government',
    'OTH': 'civil_society',
}

# 输出文件名
OUTPUT_FILES = {
    'weights': 'weights.json',
    'circuit': 'circuit.qasm',
    'stats': 'stats.json',
    'distribution': 'distribution.csv',
    'scores': 'scores.json',
    'trajectory': 'trajectory.csv',
}

# 比特序说明（写入输出文件）
BIT_ORDER_NOTE = "qubit 0 (academia) is the least significant bit; bitstrings are written qubit n-1 first"

# 错误码与退出码
EXIT_CODES = {
    'INTERNAL': 1,
    'INVALID_ARGUMENT': 2,
    'SCHEMA_ERROR': 3,
    'PARSE_ERROR': 4,
    'UNKNOWN_ACTIVITY_TYPE': 5,
    'UNKNOWN_PROJECT': 6,
    'DEGENERATE_FUNDING': 7,
    'DATA_INTEGRITY': 8,
    'DEGENERATE_SCORES': 9,
    'IO_ERROR': 10,
}
