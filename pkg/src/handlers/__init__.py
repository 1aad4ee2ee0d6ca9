"""命令共用的處理函式"""
