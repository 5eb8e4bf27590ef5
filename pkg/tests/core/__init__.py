# Core tests package