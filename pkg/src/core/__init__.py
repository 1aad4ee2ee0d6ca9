"""稠密複數矩陣與 JSON 矩陣格式"""
