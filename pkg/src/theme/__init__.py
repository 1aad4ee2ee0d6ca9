"""終端機主題"""
